// qgeom command-line front end.
//
//   qgeom run-vqe --ansatz ldca --hamiltonian data/hamiltonians/h2_entangled.json --optimizer qng --out runs/ldca
//   qgeom scan-landscape --ansatz hea --scan 1,2 --fix 3=0.5 --out scans/hea
//   qgeom hopf --ansatz ldca --theta 0.1,0.2,0.3,0.4,0.5
//   qgeom validate
//
// Exit codes: 0 success, 1 validation or run failure, 2 configuration error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qgeom/qgeom.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

double parse_real(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw qgeom::InvalidInput("invalid number for " + what + ": '" + text + "'");
  }
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item, what));
  return out;
}

struct RunVqeArgs {
  std::string ansatz, hamiltonian, optimizer = "gd", metric = "block", inversion = "pinv", stop = "energy", out;
  std::string tol = "1e-6";
  double lr = 0.05, rcond = 1e-8, eps = 1e-3;
  int steps = 200, trials = 50;
  unsigned workers = 0;
  std::uint64_t seed = 0;
};

int run_vqe(const RunVqeArgs& a) {
  qgeom::harness::ExperimentConfig cfg;
  cfg.kind = qgeom::parse_ansatz(a.ansatz);
  cfg.hamiltonian_path = a.hamiltonian;
  cfg.trials = a.trials;
  cfg.out_dir = a.out;
  cfg.workers = a.workers;
  cfg.opt.learning_rate = a.lr;
  cfg.opt.max_steps = a.steps;
  cfg.opt.tol = parse_real(a.tol, "--tol");
  cfg.opt.optimizer = qgeom::parse_optimizer(a.optimizer);
  cfg.opt.metric_mode = qgeom::parse_metric_mode(a.metric);
  cfg.opt.seed = a.seed;
  if (a.inversion == "pinv") {
    cfg.opt.inversion = qgeom::InversionPolicy::pseudo_inverse(a.rcond);
  } else if (a.inversion == "tikhonov") {
    cfg.opt.inversion = qgeom::InversionPolicy::tikhonov(a.eps);
  } else {
    throw qgeom::InvalidInput("unknown inversion '" + a.inversion + "' (expected pinv, tikhonov)");
  }
  if (a.stop == "energy") {
    cfg.opt.stop_rule = qgeom::StopRule::EnergyDelta;
  } else if (a.stop == "grad") {
    cfg.opt.stop_rule = qgeom::StopRule::GradNorm;
  } else {
    throw qgeom::InvalidInput("unknown stop rule '" + a.stop + "' (expected energy, grad)");
  }

  const auto s = qgeom::harness::cmd_run_vqe(cfg);
  std::cout << "trials " << s.trials << ", success " << s.success_fraction << ", median steps to "
            << s.threshold << ": ";
  if (std::isfinite(s.median_steps)) {
    std::cout << s.median_steps;
  } else {
    std::cout << "not reached";
  }
  std::cout << ", wrote " << cfg.out_dir.string() << "\n";
  return kExitOk;
}

struct ScanArgs {
  std::string ansatz, scan, out;
  std::vector<std::string> fix;
  int grid = qgeom::harness::kDefaultGridResolution;
  std::vector<double> clip = {qgeom::harness::kDefaultClipLow, qgeom::harness::kDefaultClipHigh};
};

int scan_landscape(const ScanArgs& a) {
  const auto kind = qgeom::parse_ansatz(a.ansatz);
  const auto idx = parse_list(a.scan, "--scan");
  if (idx.size() != 2) throw qgeom::InvalidInput("--scan takes exactly two 1-based indices, e.g. 1,2");
  qgeom::ParamVector fixed(static_cast<std::size_t>(qgeom::parameter_count(kind)), 0.0);
  for (const auto& f : a.fix) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw qgeom::InvalidInput("--fix expects <index>=<value>, got '" + f + "'");
    const double i = parse_real(f.substr(0, eq), "--fix index");
    if (i < 1 || i > static_cast<double>(fixed.size()) || i != std::floor(i)) {
      throw qgeom::InvalidInput("--fix index out of range: '" + f + "'");
    }
    fixed[static_cast<std::size_t>(i) - 1] = parse_real(f.substr(eq + 1), "--fix value");
  }
  for (double i : idx)
    if (i != std::floor(i)) throw qgeom::InvalidInput("--scan indices must be integers");
  const auto grid = qgeom::harness::scan_landscape(kind, static_cast<int>(idx[0]) - 1, static_cast<int>(idx[1]) - 1,
                                                   fixed, a.grid, a.clip[0], a.clip[1]);
  const std::filesystem::path dir = qgeom::harness::detail::prepare_out_dir(a.out);
  const auto path = dir / ("landscape_" + std::string(qgeom::to_string(kind)) + ".csv");
  std::ostringstream os;
  qgeom::harness::write_landscape_csv(os, grid);
  qgeom::harness::detail::write_file(path, os.str());
  std::cout << "wrote " << path.string() << "\n";
  return kExitOk;
}

int hopf(const std::string& ansatz, const std::string& theta) {
  const auto kind = qgeom::parse_ansatz(ansatz);
  const auto t = parse_list(theta, "--theta");
  std::cout << qgeom::harness::hopf_report(kind, t).dump(2) << "\n";
  return kExitOk;
}

int validate(int samples, std::uint64_t seed) {
  qgeom::harness::ValidationOptions opt;
  if (samples > 0) opt.samples = samples;
  opt.seed = seed;
  bool all = true;
  for (const auto& r : qgeom::harness::run_validation(opt)) {
    std::cout << std::left << std::setw(26) << r.name << (r.passed ? "PASS  " : "FAIL  ") << r.detail << "\n";
    all = all && r.passed;
  }
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit circuit geometry and natural-gradient VQE toolkit"};
  app.require_subcommand(1);

  RunVqeArgs vqe;
  auto* run = app.add_subcommand("run-vqe", "Multi-trial VQE with per-trial CSV traces and a summary JSON");
  run->add_option("--ansatz", vqe.ansatz, "hea, ldca, qgan, shea, qgan-aug")->required();
  run->add_option("--hamiltonian", vqe.hamiltonian, "JSON file with a 6-entry \"nu\" array")->required();
  run->add_option("--optimizer", vqe.optimizer, "gd or qng")->capture_default_str();
  run->add_option("--metric", vqe.metric, "dense, block or diag")->capture_default_str();
  run->add_option("--inversion", vqe.inversion, "pinv or tikhonov")->capture_default_str();
  run->add_option("--rcond", vqe.rcond, "pseudo-inverse cutoff relative to the largest eigenvalue")->capture_default_str();
  run->add_option("--eps", vqe.eps, "Tikhonov shift")->capture_default_str();
  run->add_option("--lr", vqe.lr, "learning rate")->capture_default_str();
  run->add_option("--steps", vqe.steps, "maximum steps")->capture_default_str();
  run->add_option("--tol", vqe.tol, "stop when |dE| (or |grad|) drops below this; 'inf' stops after one step")
      ->capture_default_str();
  run->add_option("--stop", vqe.stop, "energy or grad")->capture_default_str();
  run->add_option("--seed", vqe.seed, "base seed")->capture_default_str();
  run->add_option("--trials", vqe.trials, "number of trials")->capture_default_str();
  run->add_option("--workers", vqe.workers, "worker threads (0: all cores)")->capture_default_str();
  run->add_option("--out", vqe.out, "output directory")->required();

  ScanArgs scan;
  auto* sc = app.add_subcommand("scan-landscape", "Curvature over a 2-D parameter slice");
  sc->add_option("--ansatz", scan.ansatz)->required();
  sc->add_option("--scan", scan.scan, "two 1-based parameter indices, e.g. 1,2")->required();
  sc->add_option("--fix", scan.fix, "<index>=<value> for a non-scanned parameter (repeatable; default 0)");
  sc->add_option("--grid", scan.grid, "points per axis")->capture_default_str();
  sc->add_option("--clip", scan.clip, "lower and upper clip bounds")->expected(2);
  sc->add_option("--out", scan.out, "output directory")->required();

  std::string hopf_ansatz, hopf_theta;
  auto* hp = app.add_subcommand("hopf", "Hopf base and fiber coordinates as JSON");
  hp->add_option("--ansatz", hopf_ansatz)->required();
  hp->add_option("--theta", hopf_theta, "comma-separated parameters")->required();

  int samples = 0;
  std::uint64_t vseed = qgeom::harness::ValidationOptions{}.seed;
  auto* val = app.add_subcommand("validate", "Run every self-check suite");
  val->add_option("--samples", samples, "random draws per ansatz (default 10000)");
  val->add_option("--seed", vseed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;  // --help exits 0
  }

  try {
    if (*run) return run_vqe(vqe);
    if (*sc) return scan_landscape(scan);
    if (*hp) return hopf(hopf_ansatz, hopf_theta);
    if (*val) return validate(samples, vseed);
  } catch (const qgeom::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitConfig;
}
