// Command-line front end for the IRSA design/evaluation toolkit.
//
// Exit codes: 0 success, 2 validation, 3 I/O, 4 numerical non-convergence.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "irsa/degree_dist.hpp"
#include "irsa/density_evolution.hpp"
#include "irsa/design.hpp"
#include "irsa/energy.hpp"
#include "irsa/sic_sim.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitNonConvergence = 4;

// All numeric CSV fields carry 9 significant digits.
std::string fmt9(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw irsa::io_error("cannot open output file: " + path);
  out << content;
  if (!out) throw irsa::io_error("write failure: " + path);
}

struct DesignOpts {
  int k = 2;
  double eps = 0.01;
  int l = 5;
  double g_tol = 1e-3;
  std::string out;
};

struct ThresholdOpts {
  std::string dist_file;
  int k = 2;
  double g_tol = 1e-3;
  std::string out;
};

struct SimOpts {
  std::string dist_file;
  int k = 2;
  std::vector<double> loads;
  int users = 1000;
  int trials = 200;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
};

struct EnergyOpts {
  double ptx = 50.0;
  double pc = 0.1;
  double noise = 1.0;
  int users = 1000;
  int l_max = 10;
  double a_star = 1.73;
  std::string out;
};

struct Table1Opts {
  double a_star = 1.73;
  int l_max = 7;
  std::string out;
};

ordered_json dist_to_json(const irsa::DegreeDistribution& dist) {
  ordered_json entries = ordered_json::array();
  for (const auto& [degree, prob] : dist.entries()) {
    entries.push_back({{"degree", degree}, {"prob", prob}});
  }
  return ordered_json{{"entries", std::move(entries)}};
}

int run_design(const DesignOpts& opts) {
  const irsa::SearchConfig config{0.1, opts.eps, opts.k};
  const irsa::DesignOutcome outcome = irsa::design_distribution(config, opts.l);
  const double g_star =
      irsa::threshold_search(outcome.dist, opts.k, opts.g_tol);
  ordered_json out{{"k", opts.k},
                   {"epsilon_target", opts.eps},
                   {"a_star", outcome.a_star},
                   {"l", outcome.truncation},
                   {"distribution", dist_to_json(outcome.dist)},
                   {"mean_degree", outcome.dist.mean_degree()},
                   {"load_bound", outcome.load_bound},
                   {"threshold", g_star},
                   {"threshold_tolerance", opts.g_tol}};
  write_output(opts.out, out.dump(2) + "\n");
  return 0;
}

int run_threshold(const ThresholdOpts& opts) {
  const irsa::DegreeDistribution dist = irsa::DegreeDistribution::load_file(opts.dist_file);
  const double g_star = irsa::threshold_search(dist, opts.k, opts.g_tol);
  const double g_below = g_star - opts.g_tol;
  const irsa::GridCertificate cert = irsa::certify_root_free(dist, opts.k, g_below);
  const auto below = irsa::run_evolution({g_below, opts.k, dist});
  const auto above = irsa::largest_root({g_star + opts.g_tol, opts.k, dist});
  if (!below.converged) return kExitNonConvergence;
  ordered_json out{
      {"k", opts.k},
      {"g_star", g_star},
      {"g_tol", opts.g_tol},
      {"certificate",
       ordered_json{{"load", g_below},
                    {"root_free", cert.root_free},
                    {"min_residual", cert.min_residual},
                    {"argmin_p", cert.argmin_p},
                    {"grid_points", cert.grid_points}}},
      {"iterations_below", below.iterations},
      {"p_star_above", above.p_star},
      {"plr_above", above.plr}};
  write_output(opts.out, out.dump(2) + "\n");
  return 0;
}

std::string report_row(double load, const irsa::SimReport& r, const SimOpts& opts) {
  std::ostringstream row;
  row << fmt9(load) << ',' << fmt9(r.realized_load) << ',' << fmt9(r.plr_estimate)
      << ',' << fmt9(r.ci_low) << ',' << fmt9(r.ci_high) << ',' << fmt9(r.throughput)
      << ',' << opts.trials << ',' << opts.users << ',' << opts.k << ',' << opts.seed;
  return row.str();
}

irsa::SimConfig make_sim_config(const irsa::DegreeDistribution& dist, const SimOpts& opts) {
  irsa::SimConfig config{dist, opts.k, opts.users, 1.0,
                         opts.trials, opts.seed, opts.threads, 0};
  return config;
}

int run_simulate(const SimOpts& opts) {
  const irsa::DegreeDistribution dist = irsa::DegreeDistribution::load_file(opts.dist_file);
  irsa::SimConfig config = make_sim_config(dist, opts);
  config.load = opts.loads.at(0);
  const irsa::SimReport report = irsa::run_trials(config);
  std::ostringstream csv;
  csv << "G,realized_G,plr,ci_low,ci_high,throughput,trials,M,K,seed\n";
  csv << report_row(config.load, report, opts) << '\n';
  write_output(opts.out, csv.str());
  return 0;
}

int run_plr_curve(const SimOpts& opts) {
  const irsa::DegreeDistribution dist = irsa::DegreeDistribution::load_file(opts.dist_file);
  const irsa::SimConfig config = make_sim_config(dist, opts);
  const auto points = irsa::plr_curve(config, opts.loads);
  std::ostringstream csv;
  csv << "G,realized_G,plr,ci_low,ci_high,throughput,trials,M,K,seed,plr_asymptotic\n";
  for (const auto& point : points) {
    const auto asymptotic = irsa::largest_root({point.load, opts.k, dist});
    csv << report_row(point.load, point.report, opts) << ','
        << fmt9(asymptotic.plr) << '\n';
  }
  write_output(opts.out, csv.str());
  return 0;
}

int run_energy(const EnergyOpts& opts) {
  const irsa::PowerModel model{opts.ptx, opts.pc, opts.noise, opts.users};
  const irsa::OptimalL best = irsa::optimal_L(model, opts.a_star, opts.l_max);
  std::ostringstream csv;
  csv << "L,A,B,E,Gamma,ratio,is_optimal\n";
  for (int l = 1; l <= opts.l_max; ++l) {
    const irsa::EnergyProfile p = irsa::profile(l, model, opts.a_star);
    csv << l << ',' << fmt9(p.coeff_a) << ',' << fmt9(p.coeff_b) << ','
        << fmt9(p.consumption) << ',' << fmt9(p.efficiency) << ','
        << fmt9(irsa::delta_ratio(l, opts.a_star)) << ','
        << (l == best.truncation ? 1 : 0) << '\n';
  }
  write_output(opts.out, csv.str());
  return 0;
}

int run_table1(const Table1Opts& opts) {
  const auto ladder = irsa::table1(opts.a_star, opts.l_max);
  std::ostringstream csv;
  csv << "L,ratio\n";
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    csv << (i + 1) << ',' << fmt9(ladder[i]) << '\n';
  }
  write_output(opts.out, csv.str());
  return 0;
}

std::vector<double> parse_loads(const std::string& csv) {
  std::vector<double> loads;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double value = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad load value: " + item);
    loads.push_back(value);
  }
  if (loads.empty()) throw std::invalid_argument("loads list is empty");
  return loads;
}

// One experiment per JSON file: {"command", "parameters", "output_path", "seed"}.
int run_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw irsa::io_error("cannot open manifest: " + path);
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw irsa::io_error(std::string("manifest parse failure: ") + e.what());
  }
  const std::string command = manifest.at("command").get<std::string>();
  const json params = manifest.value("parameters", json::object());
  const std::string out = manifest.value("output_path", std::string());
  const std::uint64_t seed = manifest.value("seed", std::uint64_t{1});

  if (command == "design") {
    DesignOpts opts;
    opts.k = params.value("k", opts.k);
    opts.eps = params.value("eps", opts.eps);
    opts.l = params.value("l", opts.l);
    opts.g_tol = params.value("g_tol", opts.g_tol);
    opts.out = out;
    return run_design(opts);
  }
  if (command == "threshold") {
    ThresholdOpts opts;
    opts.dist_file = params.at("dist").get<std::string>();
    opts.k = params.value("k", opts.k);
    opts.g_tol = params.value("g_tol", opts.g_tol);
    opts.out = out;
    return run_threshold(opts);
  }
  if (command == "simulate" || command == "plr-curve") {
    SimOpts opts;
    opts.dist_file = params.at("dist").get<std::string>();
    opts.k = params.value("k", opts.k);
    if (params.contains("loads") && params["loads"].is_array()) {
      opts.loads = params["loads"].get<std::vector<double>>();
    } else if (params.contains("load")) {
      opts.loads = {params["load"].get<double>()};
    }
    if (opts.loads.empty()) throw std::invalid_argument("manifest needs loads");
    opts.users = params.value("users", opts.users);
    opts.trials = params.value("trials", opts.trials);
    opts.threads = params.value("threads", opts.threads);
    opts.seed = seed;
    opts.out = out;
    return command == "simulate" ? run_simulate(opts) : run_plr_curve(opts);
  }
  if (command == "energy") {
    EnergyOpts opts;
    opts.ptx = params.value("ptx", opts.ptx);
    opts.pc = params.value("pc", opts.pc);
    opts.noise = params.value("noise", opts.noise);
    opts.users = params.value("users", opts.users);
    opts.l_max = params.value("l_max", opts.l_max);
    opts.a_star = params.value("a", opts.a_star);
    opts.out = out;
    return run_energy(opts);
  }
  if (command == "table1") {
    Table1Opts opts;
    opts.a_star = params.value("a", opts.a_star);
    opts.l_max = params.value("l_max", opts.l_max);
    opts.out = out;
    return run_table1(opts);
  }
  throw std::invalid_argument("unknown manifest command: " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IRSA multi-packet-reception design and evaluation toolkit"};
  app.require_subcommand(1);

  DesignOpts design_opts;
  auto* design = app.add_subcommand(
      "design", "Derive the optimal truncated-exponential distribution");
  design->add_option("--k", design_opts.k, "MPR capability K")->check(CLI::PositiveNumber);
  design->add_option("--eps", design_opts.eps, "Objective precision for a*");
  design->add_option("--l", design_opts.l, "Maximum repetition rate L")->check(CLI::PositiveNumber);
  design->add_option("--g-tol", design_opts.g_tol, "Threshold bisection tolerance");
  design->add_option("--out", design_opts.out, "Output JSON path (default stdout)");

  ThresholdOpts threshold_opts;
  auto* threshold = app.add_subcommand(
      "threshold", "Certify the asymptotic load threshold of a distribution");
  threshold->add_option("--dist", threshold_opts.dist_file, "Distribution JSON file")->required();
  threshold->add_option("--k", threshold_opts.k, "MPR capability K")->check(CLI::PositiveNumber);
  threshold->add_option("--g-tol", threshold_opts.g_tol, "Bisection tolerance");
  threshold->add_option("--out", threshold_opts.out, "Output JSON path (default stdout)");

  SimOpts sim_opts;
  std::string loads_csv;
  auto add_sim_flags = [&](CLI::App* cmd, bool many_loads) {
    cmd->add_option("--dist", sim_opts.dist_file, "Distribution JSON file")->required();
    cmd->add_option("--k", sim_opts.k, "MPR capability K")->check(CLI::PositiveNumber);
    if (many_loads) {
      cmd->add_option("--loads", loads_csv, "Comma-separated loads G")->required();
    } else {
      cmd->add_option("--load", loads_csv, "Load G")->required();
    }
    cmd->add_option("--users", sim_opts.users, "Users per frame M")->check(CLI::PositiveNumber);
    cmd->add_option("--trials", sim_opts.trials, "Frames per load point")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", sim_opts.seed, "RNG seed");
    cmd->add_option("--threads", sim_opts.threads, "Worker threads (does not change results)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", sim_opts.out, "Output CSV path (default stdout)");
  };
  auto* curve = app.add_subcommand("plr-curve", "Monte Carlo PLR sweep over loads");
  add_sim_flags(curve, true);
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo PLR at a single load");
  add_sim_flags(simulate, false);

  EnergyOpts energy_opts;
  auto* energy = app.add_subcommand("energy", "Energy/efficiency sweep over L");
  energy->add_option("--ptx", energy_opts.ptx, "Transmit power P_tx");
  energy->add_option("--pc", energy_opts.pc, "Idle power P_c");
  energy->add_option("--noise", energy_opts.noise, "Noise power sigma^2");
  energy->add_option("--users", energy_opts.users, "Users M")->check(CLI::PositiveNumber);
  energy->add_option("--l-max", energy_opts.l_max, "Largest L in the sweep")->check(CLI::PositiveNumber);
  energy->add_option("--a", energy_opts.a_star, "Exponential parameter a*");
  energy->add_option("--out", energy_opts.out, "Output CSV path (default stdout)");

  Table1Opts table_opts;
  auto* table = app.add_subcommand("table1", "Energy trade-off ladder dA/|dB|");
  table->add_option("--l-max", table_opts.l_max, "Number of ladder entries")->check(CLI::PositiveNumber);
  table->add_option("--a", table_opts.a_star, "Exponential parameter a*");
  table->add_option("--out", table_opts.out, "Output CSV path (default stdout)");

  std::string manifest_path;
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON manifest");
  run->add_option("manifest", manifest_path, "Manifest JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (design->parsed()) return run_design(design_opts);
    if (threshold->parsed()) return run_threshold(threshold_opts);
    if (curve->parsed() || simulate->parsed()) {
      sim_opts.loads = parse_loads(loads_csv);
      return curve->parsed() ? run_plr_curve(sim_opts) : run_simulate(sim_opts);
    }
    if (energy->parsed()) return run_energy(energy_opts);
    if (table->parsed()) return run_table1(table_opts);
    if (run->parsed()) return run_manifest(manifest_path);
  } catch (const irsa::io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const irsa::convergence_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
