#include "volterra/cli.hpp"

#include <cstdint>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "volterra/acceptance.hpp"
#include "volterra/analyze.hpp"
#include "volterra/errors.hpp"
#include "volterra/moments.hpp"
#include "volterra/process.hpp"
#include "volterra/report.hpp"
#include "volterra/simulate.hpp"
#include "volterra/theory.hpp"

namespace volterra::cli {

namespace {

using nlohmann::ordered_json;

struct CommonOpts {
  std::string kind;
  double alpha = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
  double tol = kDefaultQuadTol;
  std::string output;
  std::string format = "json";
};

void add_process_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--kind", o.kind, "process kind: u1..u6, v, wiener")
      ->required();
  cmd->add_option("--alpha", o.alpha, "power exponent alpha");
  cmd->add_option("--gamma", o.gamma, "weight exponent gamma");
  cmd->add_option("--lambda", o.lambda, "tempering rate lambda");
}

void add_io_flags(CLI::App* cmd, CommonOpts& o, bool csv_allowed = true) {
  cmd->add_option("--tol", o.tol, "quadrature tolerance")
      ->check(CLI::Range(1e-14, 1e-4));
  cmd->add_option("--output", o.output, "write the report to a file");
  if (csv_allowed)
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

int emit(const std::string& content, const std::string& path,
         std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << content;
    return 0;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file " << path << "\n";
    return 1;
  }
  file << content;
  return 0;
}

ordered_json regime_json(const RegimeReport& rep, ordered_json base) {
  base["regime"] = to_string(rep.regime);
  if (rep.rho_lower) base["rho_lower"] = *rep.rho_lower;
  if (rep.rho_upper) base["rho_upper"] = *rep.rho_upper;
  return base;
}

ordered_json table_values(const IncrementTable& table) {
  ordered_json v;
  v["anchor"] = table.anchor;
  v["method"] = table.method == ScanMethod::Quadrature ? "quadrature"
                                                       : "monte_carlo";
  v["lags"] = table.lags;
  v["sigma"] = table.sigma;
  return v;
}

std::string table_csv(const IncrementTable& table) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < table.lags.size(); ++k)
    rows.push_back({format_number(table.lags[k]),
                    format_number(table.sigma[k]),
                    format_number(table.std_errors[k])});
  return render_csv({"h", "sigma", "std_error"}, rows);
}

const char* method_name(MomentMethod m) {
  switch (m) {
    case MomentMethod::ClosedForm: return "closed_form";
    case MomentMethod::Quadrature: return "quadrature";
    case MomentMethod::SumOfComponents: return "sum_of_components";
  }
  return "?";
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"Gaussian Volterra process toolkit"};
  app.require_subcommand(1);

  CommonOpts o;
  double t1 = 0.0, t2 = 1.0;
  double s_point = 0.0, t_point = 1.0;
  double anchor = -1.0;  // negative: derive from the interval midpoint
  double h_max = 0.0;    // zero: derive from the interval
  double lag_ratio = 0.5;
  std::size_t lag_count = 12;
  std::string method = "quadrature";
  std::size_t n_paths = 10000;
  std::uint64_t seed = 0;
  std::size_t n_points = 64;
  double sim_t2 = 1.0;
  double alpha_only = 0.0;

  CLI::App* describe = app.add_subcommand(
      "describe", "regime classification for a process on an interval");
  add_process_flags(describe, o);
  describe->add_option("--t1", t1, "interval start");
  describe->add_option("--t2", t2, "interval end");
  add_io_flags(describe, o, false);

  CLI::App* var_cmd =
      app.add_subcommand("variance", "E U(t)^2 at a time point");
  add_process_flags(var_cmd, o);
  var_cmd->add_option("--t", t_point, "time point")->required();
  add_io_flags(var_cmd, o, false);

  CLI::App* cov_cmd = app.add_subcommand("covariance", "E U(s) U(t)");
  add_process_flags(cov_cmd, o);
  cov_cmd->add_option("--s", s_point, "first time point")->required();
  cov_cmd->add_option("--t", t_point, "second time point")->required();
  add_io_flags(cov_cmd, o, false);

  CLI::App* inc_cmd = app.add_subcommand(
      "incvar", "incremental variance E (U(t) - U(s))^2 with breakdown");
  add_process_flags(inc_cmd, o);
  inc_cmd->add_option("--s", s_point, "increment start")->required();
  inc_cmd->add_option("--t", t_point, "increment end")->required();
  add_io_flags(inc_cmd, o, false);

  CLI::App* const_cmd = app.add_subcommand(
      "constant", "Mandelbrot-Van Ness constant, both evaluation routes");
  const_cmd->add_option("--alpha", alpha_only, "alpha in (-1/2, 1/2)")
      ->required();
  const_cmd->add_option("--tol", o.tol, "quadrature tolerance")
      ->check(CLI::Range(1e-14, 1e-4));
  const_cmd->add_option("--output", o.output, "write the report to a file");

  CLI::App* scan_cmd = app.add_subcommand(
      "scan", "ladder of incremental L2 norms at geometrically shrinking lags");
  add_process_flags(scan_cmd, o);
  scan_cmd->add_option("--t1", t1, "interval start");
  scan_cmd->add_option("--t2", t2, "interval end");
  scan_cmd->add_option("--anchor", anchor, "anchor point (default: midpoint)");
  scan_cmd->add_option("--h-max", h_max,
                       "largest lag (default: (t2-t1)/100)");
  scan_cmd->add_option("--lag-count", lag_count, "number of lags (>= 4)");
  scan_cmd->add_option("--lag-ratio", lag_ratio, "geometric ratio in (0,1)");
  scan_cmd->add_option("--method", method, "quadrature or monte_carlo")
      ->check(CLI::IsMember({"quadrature", "monte_carlo"}));
  scan_cmd->add_option("--paths", n_paths, "Monte Carlo path count");
  scan_cmd->add_option("--seed", seed, "Monte Carlo seed");
  add_io_flags(scan_cmd, o);

  CLI::App* fit_cmd = app.add_subcommand(
      "fit", "scan, fit the exponent and compare with the regime table");
  add_process_flags(fit_cmd, o);
  fit_cmd->add_option("--t1", t1, "interval start");
  fit_cmd->add_option("--t2", t2, "interval end");
  fit_cmd->add_option("--anchor", anchor, "anchor point (default: midpoint)");
  fit_cmd->add_option("--h-max", h_max, "largest lag (default: (t2-t1)/100)");
  fit_cmd->add_option("--lag-count", lag_count, "number of lags (>= 4)");
  fit_cmd->add_option("--lag-ratio", lag_ratio, "geometric ratio in (0,1)");
  fit_cmd->add_option("--method", method, "quadrature or monte_carlo")
      ->check(CLI::IsMember({"quadrature", "monte_carlo"}));
  fit_cmd->add_option("--paths", n_paths, "Monte Carlo path count");
  fit_cmd->add_option("--seed", seed, "Monte Carlo seed");
  add_io_flags(fit_cmd, o, false);

  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "sample paths on a uniform grid, exported as CSV");
  add_process_flags(sim_cmd, o);
  sim_cmd->add_option("--t2", sim_t2, "grid end point");
  sim_cmd->add_option("--points", n_points, "grid size");
  sim_cmd->add_option("--paths", n_paths, "path count");
  sim_cmd->add_option("--seed", seed, "sampling seed");
  sim_cmd->add_option("--tol", o.tol, "covariance quadrature tolerance")
      ->check(CLI::Range(1e-14, 1e-4));
  sim_cmd->add_option("--output", o.output, "write the CSV to a file");

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run the full acceptance suite, one pass/fail per criterion");
  (void)verify_cmd;

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("volterra-helix");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << app.help();
    return 1;
  }

  try {
    if (*describe) {
      const ProcessSpec spec =
          make_process(kind_from_string(o.kind), o.alpha, o.gamma, o.lambda);
      const Interval iv(t1, t2);
      const RegimeReport rep = classify_regime(spec, iv);
      ordered_json values;
      values["t1"] = t1;
      values["t2"] = t2;
      values["requires_t1_positive"] = rep.requires_t1_positive;
      ordered_json doc = regime_json(
          rep, make_report(spec, values, ordered_json::object(),
                           "theory: " + rep.source));
      return emit(render_json(doc), o.output, out, err);
    }

    if (*var_cmd) {
      const ProcessSpec spec =
          make_process(kind_from_string(o.kind), o.alpha, o.gamma, o.lambda);
      const double v = variance(spec, t_point, o.tol);
      ordered_json values;
      values["t"] = t_point;
      values["variance"] = v;
      switch (spec.kind) {
        case ProcessKind::TemperedFbm:
        case ProcessKind::TemperedFbmII:
        case ProcessKind::PastComponent:
        case ProcessKind::PowerWeightedFull: {
          // variance of the two-sided kinds is the increment from zero
          const MomentBreakdown b =
              incremental_variance({spec, 0.0, t_point}, o.tol);
          values["j1"] = b.j1;
          values["j2"] = b.j2;
          values["j4"] = b.j4;
          values["method"] = method_name(b.method);
          break;
        }
        case ProcessKind::ExpTempered:
          values["method"] = "quadrature";
          break;
        default:
          values["method"] = "closed_form";
      }
      const ordered_json doc =
          make_report(spec, values, ordered_json::object(),
                      "moments: closed forms where available, quadrature "
                      "otherwise");
      return emit(render_json(doc), o.output, out, err);
    }

    if (*cov_cmd) {
      const ProcessSpec spec =
          make_process(kind_from_string(o.kind), o.alpha, o.gamma, o.lambda);
      const double v = covariance(spec, s_point, t_point, o.tol);
      ordered_json values;
      values["s"] = s_point;
      values["t"] = t_point;
      values["covariance"] = v;
      const ordered_json doc =
          make_report(spec, values, ordered_json::object(),
                      "moments: polarization of variances and the "
                      "incremental variance");
      return emit(render_json(doc), o.output, out, err);
    }

    if (*inc_cmd) {
      const ProcessSpec spec =
          make_process(kind_from_string(o.kind), o.alpha, o.gamma, o.lambda);
      const MomentBreakdown b =
          incremental_variance({spec, s_point, t_point}, o.tol);
      ordered_json values;
      values["s"] = s_point;
      values["t"] = t_point;
      values["j1"] = b.j1;
      values["j2"] = b.j2;
      values["j4"] = b.j4;
      values["total"] = b.total;
      values["method"] = method_name(b.method);
      ordered_json errors;
      errors["error_estimate"] = b.error_estimate;
      const ordered_json doc = make_report(
          spec, values, errors, "moments: shared-past/fresh-noise split");
      return emit(render_json(doc), o.output, out, err);
    }

    if (*const_cmd) {
      const double closed = mandelbrot_constant(alpha_only);
      const double numeric = mandelbrot_constant_numeric(alpha_only, o.tol);
      ordered_json values;
      values["alpha"] = alpha_only;
      values["closed_form"] = closed;
      values["numeric"] = numeric;
      values["difference"] = closed - numeric;
      ordered_json doc = make_report(
          make_process(ProcessKind::PowerWeighted, alpha_only, 0.0), values,
          ordered_json::object(),
          "moments: gamma closed form vs semi-infinite quadrature");
      return emit(render_json(doc), o.output, out, err);
    }

    if (*scan_cmd || *fit_cmd) {
      const ProcessSpec spec =
          make_process(kind_from_string(o.kind), o.alpha, o.gamma, o.lambda);
      const Interval iv(t1, t2);
      const double a = anchor >= 0.0 ? anchor : 0.5 * (t1 + t2);
      const double hm = h_max > 0.0 ? h_max : 0.01 * (t2 - t1);
      const ScanMethod sm = method == "quadrature" ? ScanMethod::Quadrature
                                                   : ScanMethod::MonteCarlo;
      const IncrementTable table = scan_increments(
          spec, a, lag_count, lag_ratio, hm, sm, {n_paths, seed}, o.tol);
      if (*scan_cmd) {
        if (o.format == "csv")
          return emit(table_csv(table), o.output, out, err);
        ordered_json errors;
        errors["std_errors"] = table.std_errors;
        ordered_json doc =
            make_report(spec, table_values(table), errors,
                        "analyze: increment ladder from moments quadrature "
                        "or Monte Carlo");
        return emit(render_json(doc), o.output, out, err);
      }
      const FitResult fit = fit_exponent(table);
      const RegimeReport rep = classify_regime(spec, iv);
      ordered_json values = table_values(table);
      values["rho_hat"] = fit.rho_hat;
      values["intercept"] = fit.intercept;
      values["r_squared"] = fit.r_squared;
      if (rep.regime == Regime::ExactQuasihelix)
        values["within_tolerance"] =
            std::abs(fit.rho_hat - *rep.rho_lower) <= 0.02;
      else if (rep.regime == Regime::Generalized)
        values["within_tolerance"] = fit.rho_hat >= *rep.rho_upper - 0.02 &&
                                     fit.rho_hat <= *rep.rho_lower + 0.02;
      else
        values["within_tolerance"] = nullptr;
      ordered_json errors;
      errors["std_errors"] = table.std_errors;
      ordered_json doc = regime_json(
          rep, make_report(spec, values, errors,
                           "analyze: log-log fit against theory: " + rep.source));
      return emit(render_json(doc), o.output, out, err);
    }

    if (*sim_cmd) {
      const ProcessSpec spec =
          make_process(kind_from_string(o.kind), o.alpha, o.gamma, o.lambda);
      if (n_points < 1) throw ValidationError("simulate: need points >= 1");
      std::vector<double> pts(n_points);
      for (std::size_t i = 0; i < n_points; ++i)
        pts[i] = sim_t2 * static_cast<double>(i + 1) /
                 static_cast<double>(n_points);
      const PathEnsemble ens =
          sample_paths(spec, TimeGrid(pts), n_paths, seed, o.tol);
      std::vector<std::string> header;
      for (double t : ens.grid.points()) header.push_back(format_number(t));
      std::vector<std::vector<std::string>> rows;
      rows.reserve(ens.n_paths);
      for (std::size_t p = 0; p < ens.n_paths; ++p) {
        std::vector<std::string> row;
        row.reserve(ens.grid.size());
        for (std::size_t i = 0; i < ens.grid.size(); ++i)
          row.push_back(format_number(
              ens.values(static_cast<Eigen::Index>(p),
                         static_cast<Eigen::Index>(i))));
        rows.push_back(std::move(row));
      }
      return emit(render_csv(header, rows), o.output, out, err);
    }

    if (*verify_cmd) {
      const std::vector<CriterionResult> results = run_acceptance(out);
      for (const auto& r : results)
        if (!r.passed) return 3;
      return 0;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const AccuracyError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const ConditioningError& e) {
    err << "numerical error: " << e.what()
        << " (smallest eigenvalue " << e.smallest_eigenvalue << ")\n";
    return 2;
  }
  err << "error: no subcommand given\n";
  return 1;
}

}  // namespace volterra::cli
