#pragma once

#include <string>

namespace volterra {

/// Kernel catalogue. The first three start the driving noise at time zero;
/// the two tempered fBm variants and the power-weighted pair integrate from
/// the infinite past. PastComponent is the negative-time part of
/// PowerWeightedFull. Wiener is the degenerate reference kernel K == 1.
enum class ProcessKind {
  ExpTempered,        // e^{-lambda u} (t-u)^alpha on (0, t)
  PowerWeighted,      // u^{-gamma/2} (t-u)^alpha on (0, t)
  HadamardLog,        // (log(t/u))^{(alpha-1)/2} on (0, t)
  TemperedFbm,        // two-sided exponentially tempered kernel
  TemperedFbmII,      // second kind, with the compensating v-integral
  PowerWeightedFull,  // |u|^{-gamma/2} [(t-u)^alpha - (-u)_+^alpha], u < t
  PastComponent,      // power-weighted kernel restricted to u < 0
  Wiener,
};

/// A kernel kind plus validated parameters; the handle every computation
/// takes. Construct through make_process, which enforces each kind's
/// parameter domain and forces unused parameters to stay zero.
struct ProcessSpec {
  ProcessKind kind = ProcessKind::Wiener;
  double alpha = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
};

/// Time interval [t1, t2] with 0 <= t1 < t2.
struct Interval {
  Interval(double t1_, double t2_);
  double t1;
  double t2;
};

ProcessSpec make_process(ProcessKind kind, double alpha = 0.0,
                         double gamma = 0.0, double lambda = 0.0);

/// Pointwise kernel K(t, u). The truncated power (x)_+^a is x^a for x > 0
/// and 0 for x <= 0; at x = 0 with a < 0 the kernel has no pointwise value
/// and a domain error is raised.
double kernel_eval(const ProcessSpec& spec, double t, double u);

/// (x)_+^a with the domain-error convention above.
double truncated_pow(double x, double a);

const char* to_string(ProcessKind kind);
ProcessKind kind_from_string(const std::string& name);

}  // namespace volterra
