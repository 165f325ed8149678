// fkdvb: command-line front end. One subcommand per capability; JSON summary
// on stdout (and in <output dir>/<subcommand>.json), columnar data as CSV.
//
// Exit codes: 0 success, 1 numerical failure (diagnostics JSON on stderr),
// 2 usage or validation error.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fkdvb/charroots.hpp"
#include "fkdvb/errors.hpp"
#include "fkdvb/fracops.hpp"
#include "fkdvb/linops.hpp"
#include "fkdvb/quadform.hpp"
#include "fkdvb/twsolve.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace fkdvb;

namespace {

constexpr int kCsvVersion = 1;

// Flag values not given on the command line are taken from the config file
// section of the subcommand (key = long flag name with '-' -> '_').
class ConfigBinder {
 public:
  template <class T>
  CLI::Option* bind(CLI::App* sub, const std::string& flag, T& target, const std::string& help) {
    CLI::Option* opt = sub->add_option(flag, target, help)->capture_default_str();
    add(sub, flag, opt, target);
    return opt;
  }
  CLI::Option* bind_flag(CLI::App* sub, const std::string& flag, bool& target,
                         const std::string& help) {
    CLI::Option* opt = sub->add_flag(flag, target, help);
    add(sub, flag, opt, target);
    return opt;
  }

  void apply(const CLI::App* sub, const json& config) const {
    const auto section = config.find(sub->get_name());
    if (section == config.end()) return;
    if (!section->is_object())
      throw InvalidArgument("config: section '" + sub->get_name() + "' must be an object");
    for (const auto& [key, value] : section->items()) {
      const auto it = entries_.find(sub->get_name() + "/" + key);
      if (it == entries_.end())
        throw InvalidArgument("config: unknown key '" + key + "' in section '" + sub->get_name() + "'");
      if (it->second.option->count() > 0) continue;  // the flag wins
      try {
        it->second.assign(value);
      } catch (const json::exception& e) {
        throw InvalidArgument("config: bad value for '" + sub->get_name() + "." + key + "': " + e.what());
      }
    }
  }

 private:
  struct Entry {
    CLI::Option* option;
    std::function<void(const json&)> assign;
  };
  template <class T>
  void add(CLI::App* sub, const std::string& flag, CLI::Option* opt, T& target) {
    std::string key = flag.substr(flag.find_first_not_of('-'));
    std::replace(key.begin(), key.end(), '-', '_');
    entries_[sub->get_name() + "/" + key] = {opt, [&target](const json& v) { v.get_to(target); }};
  }
  std::map<std::string, Entry> entries_;
};

fs::path resolve_output_dir(const std::string& flag, const json& config) {
  std::string dir = flag;
  if (dir.empty() && config.contains("output_dir")) dir = config["output_dir"].get<std::string>();
  if (dir.empty())
    if (const char* env = std::getenv("FKDVB_OUTPUT_DIR")) dir = env;
  if (dir.empty()) dir = ".";
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_csv(const fs::path& path, const std::string& header) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out.precision(17);
  out << header << '\n';
  return out;
}

void emit(const json& summary, const fs::path& dir, const std::string& name) {
  std::ofstream f(dir / (name + ".json"));
  f << summary.dump(2) << '\n';
  std::cout << summary.dump(2) << std::endl;
}

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double order_of(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

std::vector<double> checked_spacings(std::vector<double> hs) {
  if (hs.empty()) throw InvalidArgument("grid spec: at least one spacing h is required");
  for (double h : hs)
    if (!(h > 0.0)) throw InvalidArgument("grid spec: spacings must be positive");
  std::sort(hs.begin(), hs.end(), std::greater<>());
  return hs;
}

// ------------------------------------------------------------------- roots

struct RootsCfg {
  double tau = 1.0, alpha = 0.5, hprime = 1.0;
  double contour_radius = 0.0;  // 0: 10 or twice the largest root modulus
};

json cmd_roots(const RootsCfg& c) {
  const WaveParams w = WaveParams::from_hprime(c.tau, c.alpha, c.hprime);
  const CharRoots r = find_roots(w);
  double R = c.contour_radius;
  if (R <= 0.0) {
    R = std::max(10.0, 2.0 * r.lambda);
    if (r.upper) R = std::max(R, 2.0 * std::abs(*r.upper));
  }
  const double gap = 0.05;  // keeps the contours off the imaginary axis
  const int right = count_roots_argument_principle(w, {gap, R, -R, R});
  const int left = count_roots_argument_principle(w, {-R, -gap, -R, R});
  json out;
  out["tau"] = c.tau;
  out["alpha"] = c.alpha;
  out["hprime"] = c.hprime;
  out["lambda"] = r.lambda;
  out["lambda_residual"] = r.lambda_residual;
  if (r.upper) {
    out["pair"] = {{"re", r.upper->real()}, {"im", r.upper->imag()}};
    out["pair_residual"] = r.pair_residual;
  } else {
    out["pair"] = nullptr;
    out["pair_residual"] = nullptr;
  }
  out["contour_counts"] = {{"right_half", right},
                           {"left_half", left},
                           {"right_rectangle", {gap, R, -R, R}},
                           {"left_rectangle", {-R, -gap, -R, R}}};
  return out;
}

// ------------------------------------------------------------------ dalpha

struct DalphaCfg {
  double alpha = 0.5, lambda = 1.0, xmin = -20.0, xmax = 0.0;
  std::vector<double> h{0.04, 0.02, 0.01};
  std::string input = "exponential";  // or "constant"
};

json cmd_dalpha(const DalphaCfg& c, const fs::path& dir) {
  const FracParams p(c.alpha);
  const bool constant = c.input == "constant";
  if (!constant && c.input != "exponential")
    throw InvalidArgument("dalpha: --input must be 'exponential' or 'constant'");
  if (!constant && !(c.lambda > 0.0)) throw InvalidArgument("dalpha: lambda must be > 0");
  const auto hs = checked_spacings(c.h);
  const double mult = constant ? 0.0 : dalpha_of_exponential(c.lambda, p);

  json rows = json::array();
  auto conv = open_csv(dir / "dalpha_convergence.csv", "h,n,max_error,order");
  double prev_err = 0.0, prev_h = 0.0, min_order = std::numeric_limits<double>::infinity();
  for (double h : hs) {
    const Grid g = Grid::with_spacing(c.xmin, c.xmax, h);
    const GridFunction f =
        constant ? GridFunction::sample(g, [](double) { return 1.0; }, TailModel::constant(1.0))
                 : GridFunction::sample(g, [&](double x) { return std::exp(c.lambda * x); },
                                        TailModel::exponential_approach(0.0, 1.0, c.lambda));
    const GridFunction d = apply_dalpha(f, p);
    double err = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
      const double exact = mult * f[i];
      err = std::max(err, constant ? std::abs(d[i]) : std::abs(d[i] / exact - 1.0));
    }
    double order = std::numeric_limits<double>::quiet_NaN();
    if (prev_h > 0.0 && err > 0.0 && prev_err > 0.0) {
      order = order_of(prev_err, err, prev_h, h);
      min_order = std::min(min_order, order);
    }
    conv << h << ',' << g.n() << ',' << err << ',' << (std::isfinite(order) ? std::to_string(order) : "")
         << '\n';
    rows.push_back({{"h", h}, {"n", g.n()}, {"max_error", err}, {"order", num(order)}});
    prev_err = err;
    prev_h = h;

    if (h == hs.back()) {
      auto csv = open_csv(dir / "dalpha.csv", "xi,f,dalpha_f,exact");
      for (std::size_t i = 0; i < g.n(); ++i)
        csv << g.x(i) << ',' << f[i] << ',' << d[i] << ',' << mult * f[i] << '\n';
    }
  }
  json out;
  out["csv_version"] = kCsvVersion;
  out["alpha"] = c.alpha;
  out["input"] = c.input;
  out["error_kind"] = constant ? "absolute" : "relative";
  if (!constant) out["lambda"] = c.lambda;
  out["convergence"] = rows;
  out["min_order"] = num(min_order);
  out["required_order"] = 2.0 - c.alpha - 0.2;
  return out;
}

// ---------------------------------------------------------------- quadform

struct QuadformCfg {
  double alpha = 0.5;
  std::uint64_t seed = 12345;
  std::size_t count = 200;
  bool skip_fixture = false;
};

json cmd_quadform(const QuadformCfg& c, const fs::path& dir) {
  const FracParams p(c.alpha);
  const MollifierKernel k = build_kernel(p);
  const Grid g = random_family_grid();
  const auto family = random_h2_0_family(c.seed, c.count);
  auto csv = open_csv(dir / "quadform.csv",
                      "index,direct,direct_error,kernel,kernel_error,difference,tolerance");
  bool nonneg = true, agree = true;
  double worst_gap = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const HalfLineFunction v = sample_half_line(family[i], g);
    const auto d = eval_I_direct(v, p);
    const auto q = eval_I_kernel(v, k);
    const double diff = std::abs(d.value - q.value);
    const double tol = std::max(1e-3, 3.0 * (d.estimated_error + q.estimated_error));
    nonneg = nonneg && d.value >= -d.estimated_error && q.value >= -q.estimated_error;
    agree = agree && diff <= tol;
    worst_gap = std::max(worst_gap, diff / tol);
    csv << i << ',' << d.value << ',' << d.estimated_error << ',' << q.value << ','
        << q.estimated_error << ',' << diff << ',' << tol << '\n';
  }
  json out;
  out["csv_version"] = kCsvVersion;
  out["alpha"] = c.alpha;
  out["seed"] = c.seed;
  out["count"] = c.count;
  out["family_version"] = RandomH20::kVersion;
  out["all_nonnegative"] = nonneg;
  out["all_agree"] = agree;
  out["worst_difference_over_tolerance"] = worst_gap;

  if (!c.skip_fixture) {
    // v = xi e^xi; reference values from adaptive quadrature of the double integral.
    static const std::map<double, double> oracle{
        {0.25, 0.0765885439040736}, {0.5, 0.221556731363189}, {0.75, 0.679801855132179}};
    const Grid fg = Grid::with_spacing(-40.0, 0.0, 0.01);
    const HalfLineFunction v(
        GridFunction::sample(fg, [](double x) { return x * std::exp(x); }), true);
    const auto d = eval_I_direct(v, p);
    json fx{{"function", "xi*exp(xi)"}, {"direct", d.value}, {"direct_error", d.estimated_error}};
    const auto it = oracle.find(c.alpha);
    if (it != oracle.end()) {
      fx["reference"] = it->second;
      fx["relative_error"] = std::abs(d.value / it->second - 1.0);
    } else {
      fx["reference"] = nullptr;
    }
    out["fixture"] = fx;
  }
  return out;
}

// --------------------------------------------------------------- nullspace

struct NullspaceCfg {
  double tau = 1.0, alpha = 0.5, hprime = 1.0, length = 40.0;
  std::vector<double> h{0.04, 0.02, 0.01};
  std::string left_bc = "exponential";  // or "dirichlet"
  std::size_t svd_max_n = 4001;
  bool flip_shift = false;
};

json cmd_nullspace(const NullspaceCfg& c, const fs::path& dir) {
  const WaveParams w = WaveParams::from_hprime(c.tau, c.alpha, c.hprime);
  LeftBC bc;
  if (c.left_bc == "exponential")
    bc = LeftBC::AsymptoticExponential;
  else if (c.left_bc == "dirichlet")
    bc = LeftBC::Dirichlet0;
  else
    throw InvalidArgument("nullspace: --left-bc must be 'exponential' or 'dirichlet'");
  if (!(c.length > 0.0)) throw InvalidArgument("nullspace: length must be > 0");
  const auto hs = checked_spacings(c.h);
  AssembleOptions opt;
  if (c.flip_shift) opt.shift_sign = +1.0;
  const double lam = find_lambda(w);

  auto csv = open_csv(dir / "nullspace.csv",
                      "h,n,error,order,zero_solution_max,linearity_defect,consistency_residual,"
                      "sigma_min_1,sigma_min_2,sigma_min_3,sigma_max,kernel_dimension");
  json rows = json::array();
  double prev_err = 0.0, prev_h = 0.0;
  double smin_lo = std::numeric_limits<double>::infinity(), smin_hi = 0.0, ratio_lo = smin_lo;
  json warnings = json::array();
  for (double h : hs) {
    const Grid g = Grid::with_spacing(-c.length, 0.0, h);
    const auto op1 = assemble(w, g, bc, 1.0, opt);
    const auto op2 = assemble(w, g, bc, 2.0, opt);
    const auto op0 = assemble(w, g, bc, 0.0, opt);
    for (const auto& s : op1.warnings()) warnings.push_back(s);
    const auto v1 = solve_bvp(op1), v2 = solve_bvp(op2), v0 = solve_bvp(op0);
    double err = 0.0, lin = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
      err = std::max(err, std::abs(v1[i] - std::exp(lam * g.x(i))));
      lin = std::max(lin, std::abs(v2[i] - 2.0 * v1[i]));
    }
    const double zero = max_abs(v0.values);
    const double order = prev_h > 0.0 ? order_of(prev_err, err, prev_h, h)
                                      : std::numeric_limits<double>::quiet_NaN();
    json row{{"h", h}, {"n", g.n()}, {"error", err}, {"order", num(order)},
             {"zero_solution_max", zero}, {"linearity_defect", lin},
             {"consistency_residual", op1.consistency_residual()}};
    csv << h << ',' << g.n() << ',' << err << ',' << (std::isfinite(order) ? std::to_string(order) : "")
        << ',' << zero << ',' << lin << ',' << op1.consistency_residual();
    if (g.n() <= c.svd_max_n) {
      const auto r = null_space_check(op0);
      row["sigma_min"] = r.smallest;
      row["sigma_max"] = r.sigma_max;
      row["kernel_dimension"] = r.kernel_dimension;
      smin_lo = std::min(smin_lo, r.smallest[0]);
      smin_hi = std::max(smin_hi, r.smallest[0]);
      ratio_lo = std::min(ratio_lo, r.smallest[0] / r.sigma_max);
      csv << ',' << r.smallest[0] << ',' << r.smallest[1] << ',' << r.smallest[2] << ','
          << r.sigma_max << ',' << r.kernel_dimension << '\n';
    } else {
      csv << ",,,,,\n";
    }
    rows.push_back(row);
    prev_err = err;
    prev_h = h;
  }
  json out;
  out["csv_version"] = kCsvVersion;
  out["tau"] = c.tau;
  out["alpha"] = c.alpha;
  out["hprime"] = c.hprime;
  out["length"] = c.length;
  out["left_bc"] = c.left_bc;
  out["shift_sign"] = opt.shift_sign;
  out["lambda"] = lam;
  out["sweep"] = rows;
  if (smin_hi > 0.0) {
    out["sigma_min_spread"] = smin_hi / smin_lo;
    out["min_sigma_ratio"] = ratio_lo;
  }
  out["warnings"] = warnings;
  return out;
}

// -------------------------------------------------------------------- wave

struct WaveCfg {
  double phi_minus = 1.0, phi_plus = 0.0, tau = 1.0, alpha = 0.5;
  double l_left = 40.0, l_right = 40.0, h = 0.01;
  double tol = 1e-8;
  int max_iter = 30;
  double phase_position = 0.0;
  bool validate_evolve = false;
  double dt = 0.1;
  double t_end = 0.0;  // 0: 20 / h'(phi_-)
};

json cmd_wave(const WaveCfg& c, const fs::path& dir) {
  const WaveParams w(c.phi_minus, c.phi_plus, c.tau, FracParams(c.alpha));
  const Grid g = Grid::with_spacing(-c.l_left, c.l_right, c.h);
  NewtonOptions nopt;
  nopt.tol = c.tol;
  nopt.max_iter = c.max_iter;
  nopt.phase_position = c.phase_position;
  const WaveProfile prof = solve_wave(w, g, nopt);
  const double lam = find_lambda(w);
  const auto R = nonlinear_residual(prof.phi, w);
  {
    auto csv = open_csv(dir / "wave_profile.csv", "xi,phi,residual");
    for (std::size_t i = 0; i < g.n(); ++i) csv << g.x(i) << ',' << prof.phi[i] << ',' << R[i] << '\n';
  }
  json out;
  out["csv_version"] = kCsvVersion;
  out["phi_minus"] = c.phi_minus;
  out["phi_plus"] = c.phi_plus;
  out["tau"] = c.tau;
  out["alpha"] = c.alpha;
  out["c"] = w.c();
  out["hprime"] = w.hprime();
  out["n"] = g.n();
  out["iterations"] = prof.iterations;
  out["residual_norm"] = prof.residual_norm;
  out["residual_history"] = prof.history;
  out["dropped_row_residual"] = prof.dropped_row_residual;
  out["lambda"] = lam;
  out["decay_rate_left"] = num(prof.decay_rate_left);
  out["relative_gap"] = num(std::abs(prof.decay_rate_left / lam - 1.0));
  out["left_deviation"] = prof.left_deviation;
  out["right_deviation"] = prof.right_deviation;
  out["warnings"] = prof.warnings;

  if (c.validate_evolve) {
    const double t_end = c.t_end > 0.0 ? c.t_end : 20.0 / w.hprime();
    const EvolveConfig cfg{c.dt, t_end, TimeScheme::ImplicitLinear_ExplicitNonlinear};
    const auto s = evolve_moving_frame(prof.phi, w, cfg);
    const GridFunction flat(g, std::vector<double>(g.n(), w.phi_minus()),
                            TailModel::constant(w.phi_minus()), TailModel::constant(w.phi_minus()));
    const auto s0 = evolve_moving_frame(flat, w, cfg);
    auto csv = open_csv(dir / "wave_evolve.csv", "step,time,drift");
    const double dt = t_end / static_cast<double>(s.steps);
    for (std::size_t i = 0; i < s.drift.size(); ++i)
      csv << i + 1 << ',' << dt * static_cast<double>(i + 1) << ',' << s.drift[i] << '\n';
    out["evolve"] = {{"dt", dt},
                     {"t_end", t_end},
                     {"dt_bound", s.dt_bound},
                     {"steps", s.steps},
                     {"max_drift", s.max_drift},
                     {"final_rhs_norm", s.final_rhs_norm},
                     {"constant_state_drift", s0.max_drift}};
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Travelling waves of the nonlocal KdV-Burgers equation: numerical checks"};
  app.require_subcommand(1);
  std::string config_path, output_dir;
  app.add_option("--config", config_path, "JSON file with one object per subcommand");
  app.add_option("--output-dir", output_dir,
                 "directory for CSV/JSON output (default: $FKDVB_OUTPUT_DIR, else .)");
  ConfigBinder cb;

  RootsCfg rc;
  auto* roots = app.add_subcommand("roots", "roots of P(z) = tau z^2 + z^a - h'");
  cb.bind(roots, "--tau", rc.tau, "dispersion tau >= 0");
  cb.bind(roots, "--alpha", rc.alpha, "fractional order in (0,1)");
  cb.bind(roots, "--hprime", rc.hprime, "h'(phi_-) > 0");
  cb.bind(roots, "--contour-radius", rc.contour_radius, "half-size of the counting rectangles (0: auto)");

  DalphaCfg dc;
  auto* dalpha = app.add_subcommand("dalpha", "convergence of D^a on e^{lambda xi}");
  cb.bind(dalpha, "--alpha", dc.alpha, "fractional order in (0,1)");
  cb.bind(dalpha, "--lambda", dc.lambda, "exponential rate");
  cb.bind(dalpha, "--xmin", dc.xmin, "left end of the grid");
  cb.bind(dalpha, "--xmax", dc.xmax, "right end of the grid");
  cb.bind(dalpha, "--spacings", dc.h, "grid spacings, coarse to fine")->expected(1, -1);
  cb.bind(dalpha, "--input", dc.input, "exponential | constant");

  QuadformCfg qc;
  auto* quad = app.add_subcommand("quadform", "I[v] by both methods on the seeded test family");
  cb.bind(quad, "--alpha", qc.alpha, "fractional order in (0,1)");
  cb.bind(quad, "--seed", qc.seed, "family seed");
  cb.bind(quad, "--count", qc.count, "number of test functions");
  cb.bind_flag(quad, "--skip-fixture", qc.skip_fixture, "skip the xi e^xi reference check");

  NullspaceCfg nc;
  auto* nulls = app.add_subcommand("nullspace", "solve_bvp refinement and singular values");
  cb.bind(nulls, "--tau", nc.tau, "dispersion tau >= 0");
  cb.bind(nulls, "--alpha", nc.alpha, "fractional order in (0,1)");
  cb.bind(nulls, "--hprime", nc.hprime, "h'(phi_-) > 0");
  cb.bind(nulls, "--length", nc.length, "domain [-length, 0]");
  cb.bind(nulls, "--spacings", nc.h, "grid spacings, coarse to fine")->expected(1, -1);
  cb.bind(nulls, "--left-bc", nc.left_bc, "exponential | dirichlet");
  cb.bind(nulls, "--svd-max-n", nc.svd_max_n, "largest n for the dense SVD");
  cb.bind_flag(nulls, "--flip-shift", nc.flip_shift, "use +h' on the diagonal (probe)");

  WaveCfg wc;
  auto* wave = app.add_subcommand("wave", "travelling wave by Newton, optional evolution check");
  cb.bind(wave, "--phi-minus", wc.phi_minus, "left state");
  cb.bind(wave, "--phi-plus", wc.phi_plus, "right state");
  cb.bind(wave, "--tau", wc.tau, "dispersion tau >= 0");
  cb.bind(wave, "--alpha", wc.alpha, "fractional order in (0,1)");
  cb.bind(wave, "--l-left", wc.l_left, "grid starts at -l_left");
  cb.bind(wave, "--l-right", wc.l_right, "grid ends at l_right");
  cb.bind(wave, "--spacing", wc.h, "grid spacing");
  cb.bind(wave, "--tol", wc.tol, "Newton tolerance (max norm)");
  cb.bind(wave, "--max-iter", wc.max_iter, "Newton iteration cap");
  cb.bind(wave, "--phase-position", wc.phase_position, "node where phi = (phi_- + phi_+)/2");
  cb.bind_flag(wave, "--validate-evolve", wc.validate_evolve, "evolve the wave in the moving frame");
  cb.bind(wave, "--dt", wc.dt, "time step");
  cb.bind(wave, "--t-end", wc.t_end, "final time (0: 20 / h')");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    json config = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw InvalidArgument("cannot read config file " + config_path);
      try {
        config = json::parse(in);
      } catch (const json::parse_error& e) {
        throw InvalidArgument("config: " + std::string(e.what()));
      }
      if (!config.is_object()) throw InvalidArgument("config: top level must be an object");
    }
    const CLI::App* sub = app.get_subcommands().front();
    cb.apply(sub, config);
    const fs::path dir = resolve_output_dir(output_dir, config);
    const std::string name = sub->get_name();
    json summary;
    if (name == "roots")
      summary = cmd_roots(rc);
    else if (name == "dalpha")
      summary = cmd_dalpha(dc, dir);
    else if (name == "quadform")
      summary = cmd_quadform(qc, dir);
    else if (name == "nullspace")
      summary = cmd_nullspace(nc, dir);
    else
      summary = cmd_wave(wc, dir);
    emit(summary, dir, name);
    return 0;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    json diag{{"error", e.what()}};
    try {
      diag["diagnostics"] = json::parse(e.diagnostics());
    } catch (const json::parse_error&) {
      diag["diagnostics"] = e.diagnostics();
    }
    std::cerr << diag.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << '\n';
    return 1;
  }
}
