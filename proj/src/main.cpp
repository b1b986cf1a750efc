// Command-line front end: identify a hidden regular base graph from the
// spectral signature of its towered quotient / spired lift.
//
// Subcommands map one-to-one onto the pipeline stages: `spectrum` emits
// eigenvalue/weight tables, `distinguish` runs the peak pipeline for a
// ladder pair, `crossval` compares the secular solver against direct
// diagonalization, `scale` sweeps ladder sizes, `oracle` builds an
// obfuscated spired instance and validates the level-state restriction, and
// `hadamard` Monte-Carlos the measurement-layer decision rule.
//
// Exit codes: 0 success, 2 usage error, 3 numerical-contract violation.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "spire/peaks.hpp"
#include "spire/qsim.hpp"
#include "spire/serf.hpp"
#include "spire/spire_graph.hpp"
#include "spire/util.hpp"

namespace {

using namespace spire;

struct GraphChoice {
  std::string family;
  int m = 0;
  std::string edge_list;
};

BaseGraph make_graph(const GraphChoice& gc) {
  if (!gc.edge_list.empty()) return load_edge_list(gc.edge_list);
  if (gc.family == "prism") {
    if (gc.m == 0) throw usage_error("--family prism requires -m");
    return prism(gc.m);
  }
  if (gc.family == "moebius") {
    if (gc.m == 0) throw usage_error("--family moebius requires -m");
    return moebius(gc.m);
  }
  if (gc.family == "k2") return k2();
  throw usage_error("select a graph with --family or --edge-list");
}

// Output sink: file when a path is given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw usage_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void add_graph_options(CLI::App* cmd, GraphChoice& gc, bool allow_custom) {
  auto* fam = cmd->add_option("--family", gc.family, "graph family")
                  ->check(CLI::IsMember({"prism", "moebius", "k2"}));
  cmd->add_option("-m,--rail", gc.m, "rail length of the ladder family");
  if (allow_custom) {
    auto* edge =
        cmd->add_option("--edge-list", gc.edge_list,
                        "custom graph file: \"n d u\" header, then edges");
    fam->excludes(edge);
  } else {
    fam->default_str("prism");
  }
}

struct TowerFlags {
  int L = -1;
  int c = 2;
  double gamma = 0.0;
};

void add_tower_options(CLI::App* cmd, TowerFlags& tf) {
  cmd->add_option("-L,--length", tf.L, "tower length (default n-1)");
  cmd->add_option("-c,--thickening", tf.c, "thickening parameter")
      ->check(CLI::IsMember({1, 2}));
  cmd->add_option("--gamma", tf.gamma,
                  "tower edge weight override (default sqrt(d/c))");
}

PeakOptions make_peak_options(double delta, int r, double horizon_mult,
                              double dt_coarse, double dt_fine,
                              const std::string& method) {
  PeakOptions opt;
  opt.delta = delta;
  opt.r = r;
  opt.horizon_mult = horizon_mult;
  opt.dt_coarse = dt_coarse;
  opt.dt_fine = dt_fine;
  opt.method =
      (method == "direct") ? SpectrumSource::Direct : SpectrumSource::Serf;
  return opt;
}

int run(int argc, char** argv) {
  CLI::App app{
      "spire: base-graph identification from towered/spired spectral "
      "signatures"};
  app.require_subcommand(1);

  // ---------------------------------------------------------------- spectrum
  auto* spectrum = app.add_subcommand(
      "spectrum", "eigenvalue/weight table of one towered graph (CSV)");
  GraphChoice sp_graph;
  TowerFlags sp_tower;
  std::string sp_method = "serf";
  bool sp_oob = false;
  std::string sp_out;
  add_graph_options(spectrum, sp_graph, /*allow_custom=*/true);
  add_tower_options(spectrum, sp_tower);
  spectrum->add_option("--method", sp_method, "spectral method")
      ->check(CLI::IsMember({"serf", "direct"}));
  spectrum->add_flag("--out-of-band", sp_oob,
                     "include hyperbolic-branch eigenvalues (serf only)");
  spectrum->add_option("-o,--out", sp_out, "output file (default stdout)");
  spectrum->callback([&] {
    const BaseGraph g = make_graph(sp_graph);
    const TowerParams p =
        make_tower_params(g, sp_tower.L, sp_tower.c, sp_tower.gamma);
    Sink sink(sp_out);
    if (sp_method == "direct") {
      write_spectrum_csv(direct_spectrum(g, p), {}, sink.stream());
    } else {
      const std::vector<SpectralChannel> channels = base_channels(g);
      write_spectrum_csv(serf_spectrum_channels(channels, p, sp_oob),
                         channels, sink.stream());
    }
  });

  // -------------------------------------------------------------- distinguish
  auto* distinguish = app.add_subcommand(
      "distinguish", "peak distinguishability of the ladder pair (JSON)");
  int di_m = 0;
  TowerFlags di_tower;
  std::string di_method = "serf";
  double di_delta = 0.05, di_hor = 1.0, di_dtc = 0.5, di_dtf = 0.01;
  int di_r = 2;
  std::string di_out;
  distinguish->add_option("-m,--rail", di_m, "rail length")->required();
  add_tower_options(distinguish, di_tower);
  distinguish->add_option("--method", di_method, "spectral method")
      ->check(CLI::IsMember({"serf", "direct"}));
  distinguish->add_option("--delta", di_delta, "failure budget");
  distinguish->add_option("-r,--hypotheses", di_r, "hypothesis count");
  distinguish->add_option("--horizon-mult", di_hor, "horizon = mult * m^2");
  distinguish->add_option("--dt-coarse", di_dtc, "coarse grid spacing");
  distinguish->add_option("--dt-fine", di_dtf, "fine grid spacing");
  distinguish->add_option("-o,--out", di_out, "output file (default stdout)");
  distinguish->callback([&] {
    const BaseGraph gA = prism(di_m);
    const BaseGraph gB = moebius(di_m);
    const TowerParams p =
        make_tower_params(gA, di_tower.L, di_tower.c, di_tower.gamma);
    const PeakResult pr = distinguishability(
        gA, gB, p,
        make_peak_options(di_delta, di_r, di_hor, di_dtc, di_dtf, di_method));
    Sink sink(di_out);
    sink.stream() << peak_json(pr) << '\n';
  });

  // ----------------------------------------------------------------- crossval
  auto* crossval = app.add_subcommand(
      "crossval",
      "secular solver vs direct diagonalization per rail length (CSV)");
  std::vector<int> cv_ms{4, 8, 16, 32};
  std::string cv_out;
  crossval->add_option("--m-list", cv_ms, "rail lengths")->delimiter(',');
  crossval->add_option("-o,--out", cv_out, "output file (default stdout)");
  crossval->callback([&] {
    Sink sink(cv_out);
    sink.stream() << "m,dis_direct,dis_serf,abs_diff\n";
    for (const int m : cv_ms) {
      const BaseGraph gA = prism(m);
      const BaseGraph gB = moebius(m);
      const TowerParams p = make_tower_params(gA);
      PeakOptions opt;
      opt.method = SpectrumSource::Serf;
      const PeakResult serf = distinguishability(gA, gB, p, opt);
      opt.method = SpectrumSource::Direct;
      const PeakResult direct = distinguishability(gA, gB, p, opt);
      sink.stream() << m << ',' << fmt9(direct.dis) << ',' << fmt9(serf.dis)
                    << ',' << fmt9(std::fabs(direct.dis - serf.dis)) << '\n';
    }
  });

  // -------------------------------------------------------------------- scale
  auto* scale = app.add_subcommand(
      "scale", "distinguishability scaling sweep over rail lengths (CSV)");
  std::vector<int> sc_ms;
  double sc_delta = 0.05;
  int sc_r = 2;
  std::string sc_out;
  scale->add_option("--m-list", sc_ms, "rail lengths")
      ->delimiter(',')
      ->required();
  scale->add_option("--delta", sc_delta, "failure budget");
  scale->add_option("-r,--hypotheses", sc_r, "hypothesis count");
  scale->add_option("-o,--out", sc_out, "output file (default stdout)");
  scale->callback([&] {
    if (sc_ms.empty()) throw usage_error("--m-list must not be empty");
    Sink sink(sc_out);
    sink.stream()
        << "m,n,dis,t_star,parseval,n2_parseval,dis2_over_parseval,n_rep\n";
    for (const int m : sc_ms) {
      const BaseGraph gA = prism(m);
      const BaseGraph gB = moebius(m);
      const TowerParams p = make_tower_params(gA);
      PeakOptions opt;
      opt.delta = sc_delta;
      opt.r = sc_r;
      const PeakResult pr = distinguishability(gA, gB, p, opt);
      const double n2par = double(pr.n) * double(pr.n) * pr.parseval;
      sink.stream() << m << ',' << pr.n << ',' << fmt9(pr.dis) << ','
                    << fmt9(pr.t_star) << ',' << fmt9(pr.parseval) << ','
                    << fmt9(n2par) << ','
                    << fmt9(pr.dis * pr.dis / pr.parseval) << ',' << pr.n_rep
                    << '\n';
    }
  });

  // ------------------------------------------------------------------- oracle
  auto* oracle = app.add_subcommand(
      "oracle",
      "build an obfuscated spired instance, dump it, and validate the "
      "level-state restriction");
  GraphChoice or_graph;
  int or_L = 0;
  int or_c = 2;
  std::uint64_t or_seed = 1;
  std::string or_out = "oracle_dump.txt";
  int or_grid = 200;
  double or_tmax = 30.0;
  add_graph_options(oracle, or_graph, /*allow_custom=*/true);
  oracle->add_option("-L,--length", or_L, "spire height")->required();
  oracle->add_option("-c,--thickening", or_c, "thickening parameter")
      ->check(CLI::IsMember({1, 2}));
  oracle->add_option("--seed", or_seed, "construction seed");
  oracle->add_option("-o,--out", or_out, "dump file path");
  oracle->add_option("--grid-points", or_grid, "Krylov-check grid size")
      ->check(CLI::Range(2, 1000000));
  oracle->add_option("--t-max", or_tmax, "Krylov-check horizon");
  oracle->callback([&] {
    const BaseGraph g = make_graph(or_graph);
    SpiredGraph sg = build_spired(g, or_L, or_c, or_seed);

    std::map<int, std::int64_t> census;
    for (const auto& nbrs : sg.adjacency) {
      ++census[static_cast<int>(nbrs.size())];
    }

    std::vector<double> ts(static_cast<std::size_t>(or_grid));
    for (int i = 0; i < or_grid; ++i) {
      ts[static_cast<std::size_t>(i)] =
          or_tmax * double(i) / double(or_grid - 1);
    }
    const ComplexSeries f_spire = spire_return_amplitude(sg, ts);
    const TowerParams p = make_tower_params(g, or_L, or_c);
    const ComplexSeries f_tower =
        return_amplitude(direct_spectrum(g, p), ts);
    double max_err = 0.0;
    for (std::size_t j = 0; j < ts.size(); ++j) {
      max_err = std::max(max_err,
                         std::abs(f_spire.values[j] - f_tower.values[j]));
    }

    const std::int64_t n_vertices = sg.n_vertices;
    // Label stream is decoupled from the construction stream so either can
    // be re-rolled independently.
    const auto inst = obfuscate(std::move(sg), or_seed + 1);
    {
      std::ofstream dump(or_out);
      if (!dump) throw usage_error("cannot open dump file: " + or_out);
      write_oracle_dump(*inst, dump);
    }

    char seed_label_hex[32];
    std::snprintf(seed_label_hex, sizeof seed_label_hex, "%0*llx",
                  (inst->label_bits + 3) / 4,
                  static_cast<unsigned long long>(inst->seed_label));
    std::ostringstream census_json;
    bool first = true;
    for (const auto& [deg, count] : census) {
      census_json << (first ? "" : ", ") << '"' << deg << "\": " << count;
      first = false;
    }
    std::cout << "{\"vertices\": " << n_vertices
              << ", \"label_bits\": " << inst->label_bits
              << ", \"seed\": " << or_seed << ", \"seed_label\": \""
              << seed_label_hex << "\", \"degree_census\": {"
              << census_json.str() << "}, \"krylov_max_err\": "
              << fmt9(max_err) << ", \"grid_points\": " << or_grid
              << ", \"t_max\": " << fmt9(or_tmax) << ", \"dump\": \"" << or_out
              << "\"}\n";
  });

  // ----------------------------------------------------------------- hadamard
  auto* hadamard = app.add_subcommand(
      "hadamard", "decision-layer Monte Carlo at the measurement budget");
  int ha_m = 0;
  long long ha_trials = 1000;
  std::uint64_t ha_seed = 1;
  double ha_delta = 0.05, ha_mult = 1.0;
  int ha_r = 2;
  bool ha_same = false;
  std::string ha_out;
  hadamard->add_option("-m,--rail", ha_m, "rail length")->required();
  hadamard->add_option("--trials", ha_trials, "trials per hypothesis");
  hadamard->add_option("--seed", ha_seed, "Monte Carlo seed");
  hadamard->add_option("--delta", ha_delta, "failure budget");
  hadamard->add_option("-r,--hypotheses", ha_r, "hypothesis count");
  hadamard->add_option("--nrep-mult", ha_mult, "budget inflation factor");
  hadamard->add_flag("--same-graph", ha_same,
                     "run both hypotheses on the prism (null experiment)");
  hadamard->add_option("-o,--out", ha_out, "output file (default stdout)");
  hadamard->callback([&] {
    const BaseGraph gA = prism(ha_m);
    const BaseGraph gB = ha_same ? prism(ha_m) : moebius(ha_m);
    const TowerParams p = make_tower_params(gA);
    TrialOptions opt;
    opt.trials = ha_trials;
    opt.delta = ha_delta;
    opt.r = ha_r;
    opt.nrep_mult = ha_mult;
    opt.seed = ha_seed;
    const TrialSummary s = trial_success_rate(gA, gB, p, opt);
    Sink sink(ha_out);
    for (const TrialOutcome& o : s.outcomes) {
      sink.stream() << trial_json(o) << '\n';
    }
    sink.stream() << "{\"summary\": true, \"m\": " << ha_m
                  << ", \"trials\": " << opt.trials << ", \"runs\": " << s.runs
                  << ", \"n_rep\": " << s.n_rep_used
                  << ", \"nrep_mult\": " << fmt9(opt.nrep_mult)
                  << ", \"delta\": " << fmt9(opt.delta)
                  << ", \"dis\": " << fmt9(s.peak.dis)
                  << ", \"t_star\": " << fmt9(s.peak.t_star)
                  << ", \"seed\": " << opt.seed
                  << ", \"success_rate\": " << fmt9(s.success_rate) << "}\n";
  });

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
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const spire::usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const spire::numeric_error& e) {
    std::cerr << "numerical contract violation: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
