#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqc/bp.hpp"
#include "sqc/circuit.hpp"
#include "sqc/classical.hpp"
#include "sqc/constructions.hpp"
#include "sqc/induced.hpp"
#include "sqc/manifest.hpp"
#include "sqc/pheno.hpp"
#include "sqc/subsystem.hpp"

namespace {

using nlohmann::json;
using namespace sqc;

// Exit codes: 0 ok, 1 usage, 2 verification failure, 3 runtime error.
struct VerifyFailure {
  std::string message;
};

std::string g_out_dir = ".";

std::string resolve_out(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute() || g_out_dir.empty() || g_out_dir == ".") return path;
  std::filesystem::create_directories(g_out_dir);
  return (std::filesystem::path(g_out_dir) / p).string();
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Code specs: hamming7 | rep<N> | alist:<path> | ldpc:<n>,<b>,<c>,<seed>
ClassicalCode parse_code_spec(const std::string& spec) {
  if (spec == "hamming7") return hamming_7_4();
  if (spec.rfind("rep", 0) == 0) {
    size_t n = 0;
    if (std::sscanf(spec.c_str(), "rep%zu", &n) == 1 && n >= 2) return repetition(n);
    throw CLI::ValidationError("bad repetition spec: " + spec);
  }
  if (spec.rfind("alist:", 0) == 0) {
    std::string path = spec.substr(6);
    ClassicalCode c;
    c.h = from_alist(read_file(path));
    c.g = c.h.kernel_basis().rref().m;
    c.n = c.h.cols();
    c.k = c.g.rows();
    c.name = "alist_" + std::filesystem::path(path).stem().string();
    return c;
  }
  if (spec.rfind("ldpc:", 0) == 0) {
    size_t n = 0, b = 0, c = 0;
    unsigned long long seed = 0;
    if (std::sscanf(spec.c_str(), "ldpc:%zu,%zu,%zu,%llu", &n, &b, &c, &seed) == 4) {
      ClassicalCode code = code_from_graph(sample_biregular(n, b, c, seed));
      std::ostringstream nm;
      nm << "ldpc_b" << b << "c" << c << "_n" << n << "_s" << seed;
      code.name = nm.str();
      return code;
    }
    throw CLI::ValidationError("bad ldpc spec: " + spec + " (want ldpc:n,b,c,seed)");
  }
  throw CLI::ValidationError("unknown code spec: " + spec);
}

void write_run_manifest(const std::string& out_file, const std::string& command,
                        const json& config) {
  json j;
  j["tool_version"] = kToolVersion;
  j["manifest_version"] = kManifestVersion;
  j["command"] = command;
  j["config"] = config;
  write_file(out_file + ".run.json", j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// build

struct BuildOpts {
  std::string kind;
  std::string code_spec = "hamming7";
  std::string code2_spec;
  std::string h1_spec, h2_spec;
  std::string q_mode = "default";
  bool minimize_q = false;
  size_t q_attempts = 200;
  uint64_t seed = 1;
  size_t distance_cap = 34;
  bool require_distance = false;
  std::string out;
};

int cmd_build(const BuildOpts& o) {
  CodeBundle bundle;
  bundle.kind = o.kind;
  json cfg;
  cfg["kind"] = o.kind;
  cfg["seed"] = o.seed;

  if (o.kind == "hgp") {
    ClassicalCode c1 = parse_code_spec(o.h1_spec.empty() ? o.code_spec : o.h1_spec);
    ClassicalCode c2 = o.h2_spec.empty() ? c1 : parse_code_spec(o.h2_spec);
    bundle.hgp = build_hgp(c1.h, c2.h);
    cfg["h1"] = c1.name;
    cfg["h2"] = c2.name;
  } else {
    ClassicalCode c1 = parse_code_spec(o.code_spec);
    ClassicalCode c2 = o.code2_spec.empty() ? c1 : parse_code_spec(o.code2_spec);
    cfg["code"] = c1.name;
    cfg["code2"] = c2.name;
    if (o.kind == "shp") {
      bundle.shp = build_shp(c1.h, c2.h);
      bundle.shp->code.name = "shp_" + c1.name + "_" + c2.name;
    } else {
      std::string q_mode = o.minimize_q ? "minimize" : o.q_mode;
      BinaryMatrix q;
      if (q_mode == "default")
        q = (c1.name == "hamming7" && c2.name == "hamming7") ? hamming_bbs_q()
                                                             : BinaryMatrix::identity(c1.k);
      else if (q_mode == "identity")
        q = BinaryMatrix::identity(c1.k);
      else if (q_mode == "minimize")
        q = minimize_qubits_q(c1, c2, o.q_attempts, o.seed, c1.h == c2.h).q;
      else
        q = BinaryMatrix::from_text(read_file(q_mode));
      bundle.bbs = build_bbs(c1, c2, q);
      cfg["q"] = q_mode;
      cfg["q_attempts"] = o.q_attempts;
    }
  }

  const SubsystemCode& code = bundle.code();
  VerifyReport report = verify_code(code);
  if (!report.ok) throw VerifyFailure{"structural check failed: " + report.summary()};

  std::optional<size_t> d = subsystem_distance_bruteforce(code, o.distance_cap);
  if (!d && o.require_distance)
    throw std::runtime_error("distance enumeration exceeded the cap and --require-distance is set");

  std::string out = resolve_out(o.out.empty() ? o.kind + ".json" : o.out);
  write_file(out, save_code_manifest(bundle));
  cfg["distance_cap"] = o.distance_cap;
  cfg["out"] = out;
  write_run_manifest(out, "build", cfg);

  std::cout << "name: " << code.name << "\n";
  std::cout << "n_qubits: " << code.n_qubits << "\n";
  std::cout << "n_logical: " << code.n_logical << "\n";
  if (d)
    std::cout << "distance: " << *d << "\n";
  else
    std::cout << "distance: unknown (enumeration capped)\n";
  std::cout << "stab_generators: " << code.stab_x.size() << " x / " << code.stab_z.size()
            << " z\n";
  std::cout << "gauge_generators: " << code.gauge_x.size() << " x / " << code.gauge_z.size()
            << " z\n";
  std::cout << "gauge_qubits: " << code.gauge_qubits() << "\n";
  std::cout << "manifest: " << out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOpts {
  std::string manifest;
  std::string mode;
  std::string estimator = "direct";
  std::vector<double> p_list;
  double p_min = 1e-3, p_max = 1e-2;
  size_t points = 5;
  double p_meas_scale = 1.0;
  uint64_t trials = 20000;
  uint64_t min_failures = 0;
  size_t weight_max = 8;
  uint64_t samples_per_weight = 5000;
  double decode_p = 1e-2;
  size_t max_iters = 60;
  uint64_t seed = 1;
  size_t jobs = 0;
  int fit_qubit = -1;
  std::string out;
};

std::unique_ptr<SyndromeDecoder> make_decoder(const CodeBundle& bundle,
                                              const InducedConfig& cfg) {
  if (bundle.kind == "bbs") return std::make_unique<BbsDecoder>(*bundle.bbs, cfg);
  if (bundle.kind == "shp") return std::make_unique<ShpDecoder>(*bundle.shp, cfg);
  throw CLI::ValidationError("mode pheno supports bbs and shp codes only");
}

CsvMeta meta_of(const CodeBundle& bundle, const std::string& estimator) {
  CsvMeta meta;
  const SubsystemCode& code = bundle.code();
  meta.code_id = code.name;
  meta.n_qubits = code.n_qubits;
  meta.n_logical = code.n_logical;
  meta.estimator = estimator;
  if (bundle.kind == "bbs")
    meta.n_classical = bundle.bbs->classical.n;
  else if (bundle.kind == "shp")
    meta.n_classical = bundle.shp->h1.cols();
  else
    meta.n_classical = bundle.hgp->h1.cols();
  return meta;
}

void print_fit(const std::vector<std::pair<double, double>>& curve, const char* label) {
  try {
    FitResult fit = fit_power_law(curve);
    std::cout << "fit(" << label << "): P = " << fmt("%.4g", fit.amplitude) << " * p^"
              << fmt("%.4g", fit.exponent) << " (rms log residual " << fmt("%.3g", fit.rms_log_residual)
              << ", " << fit.points_used << " points)\n";
  } catch (const std::invalid_argument& e) {
    std::cout << "fit(" << label << "): unavailable (" << e.what() << ")\n";
  }
}

int cmd_simulate(const SimulateOpts& o) {
  if (o.mode == "circuit" && o.estimator != "direct")
    throw CLI::ValidationError("mode circuit supports only the direct estimator");
  CodeBundle bundle = load_code_manifest(read_file(o.manifest));
  const SubsystemCode& code = bundle.code();
  std::vector<double> grid = o.p_list.empty() ? log_grid(o.p_min, o.p_max, o.points) : o.p_list;

  std::string out = resolve_out(o.out.empty() ? o.mode + ".csv" : o.out);
  std::ofstream csv(out, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot open " + out + " for writing");
  write_csv_header(csv);

  json cfg;
  cfg["manifest"] = o.manifest;
  cfg["mode"] = o.mode;
  cfg["estimator"] = o.estimator;
  cfg["p_grid"] = grid;
  cfg["p_meas_scale"] = o.p_meas_scale;
  cfg["trials"] = o.trials;
  cfg["min_failures"] = o.min_failures;
  cfg["seed"] = o.seed;
  cfg["jobs"] = o.jobs;
  cfg["max_iters"] = o.max_iters;
  cfg["out"] = out;

  std::vector<std::pair<double, double>> block_curve;

  if (o.mode == "pheno" && o.estimator == "importance") {
    InducedConfig dcfg{o.decode_p, o.decode_p * o.p_meas_scale, o.max_iters};
    auto decoder = make_decoder(bundle, dcfg);
    ImportanceResult res = run_importance(*decoder, o.p_meas_scale > 0, o.weight_max,
                                          o.samples_per_weight, o.seed, o.jobs);
    cfg["weight_max"] = o.weight_max;
    cfg["samples_per_weight"] = o.samples_per_weight;
    cfg["decode_p"] = o.decode_p;
    json strata = json::array();
    for (const auto& st : res.strata)
      strata.push_back({{"weight", st.weight},
                        {"samples", st.samples},
                        {"block_failures", st.block_failures},
                        {"qubit_failures", st.qubit_failures}});
    cfg["strata"] = strata;

    // CSV rows carry rates scaled to a fixed denominator so the schema's
    // integer counts stay exact enough for fitting.
    const uint64_t denom = 1000000000000ull;
    CsvMeta meta = meta_of(bundle, "importance");
    for (double p : grid) {
      ImportanceEstimate est = res.block_estimate(p);
      std::vector<double> qrates = res.qubit_estimates(p);
      std::vector<uint64_t> qcounts;
      for (double r : qrates) qcounts.push_back(uint64_t(std::llround(r * double(denom))));
      uint64_t bcount = uint64_t(std::llround(est.block_rate * double(denom)));
      write_csv_point(csv, meta, p, denom, bcount, qcounts, o.seed);
      block_curve.emplace_back(p, est.block_rate);
      std::cout << "p=" << fmt("%.4g", p) << " block_rate=" << fmt("%.6g", est.block_rate)
                << " stderr=" << fmt("%.3g", est.block_stderr)
                << " tail=" << fmt("%.3g", est.tail_bound) << "\n";
    }
  } else if (o.mode == "pheno") {
    CsvMeta meta = meta_of(bundle, "direct");
    for (size_t i = 0; i < grid.size(); ++i) {
      double p = grid[i];
      InducedConfig dcfg{p, p * o.p_meas_scale, o.max_iters};
      auto decoder = make_decoder(bundle, dcfg);
      PhenoModel model{p, p * o.p_meas_scale};
      uint64_t point_seed = o.seed + i;
      uint64_t t = o.min_failures ? std::min<uint64_t>(o.trials, 1000) : o.trials;
      SimResult res;
      for (;;) {
        res = run_trials(*decoder, model, t, point_seed, o.jobs);
        if (!o.min_failures || res.block_failures >= o.min_failures || t >= o.trials) break;
        t = std::min<uint64_t>(t * 2, o.trials);
      }
      write_csv_point(csv, meta, p, res.trials, res.block_failures, res.qubit_failures,
                      point_seed);
      block_curve.emplace_back(p, res.block_rate());
      std::cout << "p=" << fmt("%.4g", p) << " trials=" << res.trials
                << " block=" << res.block_failures << " rate=" << fmt("%.6g", res.block_rate())
                << " unconverged=" << res.unconverged << "\n";
    }
  } else if (o.mode == "circuit") {
    CsvMeta meta = meta_of(bundle, "circuit");
    ProtocolContext ctx(code);
    std::vector<CircuitPoint> points;
    for (size_t i = 0; i < grid.size(); ++i) {
      uint64_t point_seed = o.seed + i;
      uint64_t t = o.min_failures ? std::min<uint64_t>(o.trials, 1000) : o.trials;
      CircuitPoint pt;
      for (;;) {
        pt = circuit_sweep(ctx, {grid[i]}, t, point_seed, o.jobs).front();
        if (!o.min_failures || pt.block_failures >= o.min_failures || t >= o.trials) break;
        t = std::min<uint64_t>(t * 2, o.trials);
      }
      points.push_back(pt);
      write_csv_point(csv, meta, pt.p, pt.trials, pt.block_failures, pt.qubit_failures,
                      point_seed);
      block_curve.emplace_back(pt.p, pt.block_rate());
      std::cout << "p=" << fmt("%.4g", pt.p) << " trials=" << pt.trials
                << " block=" << pt.block_failures << " rate=" << fmt("%.6g", pt.block_rate())
                << "\n";
    }
    if (auto cross = pseudothreshold(points, -1, code.n_logical))
      std::cout << "pseudothreshold(block): " << fmt("%.4g", cross->estimate) << " (bracket ["
                << fmt("%.4g", cross->lo) << ", " << fmt("%.4g", cross->hi) << "])\n";
    else
      std::cout << "pseudothreshold(block): no crossing inside the grid\n";
    for (size_t qi = 0; qi < code.n_logical; ++qi) {
      if (auto cross = pseudothreshold(points, int(qi)))
        std::cout << "pseudothreshold(qubit " << qi << "): " << fmt("%.4g", cross->estimate)
                  << "\n";
      else
        std::cout << "pseudothreshold(qubit " << qi << "): no crossing inside the grid\n";
    }
  } else {
    throw CLI::ValidationError("unknown mode: " + o.mode);
  }

  csv.close();
  print_fit(block_curve, "block");
  write_run_manifest(out, "simulate", cfg);
  std::cout << "csv: " << out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOpts {
  std::string manifest;
  std::string h1_spec, h2_spec;
};

int cmd_verify(const VerifyOpts& o) {
  if (!o.manifest.empty()) {
    std::string text = read_file(o.manifest);
    SubsystemCode stored = parse_manifest_code(text);
    VerifyReport report = verify_code(stored);
    std::cout << "code: " << stored.name << " n=" << stored.n_qubits
              << " k=" << stored.n_logical << "\n";
    if (!report.ok) throw VerifyFailure{report.summary()};
    std::cout << "structural checks: ok\n";
    try {
      load_code_manifest(text);
    } catch (const std::exception& e) {
      throw VerifyFailure{std::string("manifest/rebuild mismatch: ") + e.what()};
    }
    std::cout << "manifest matches rebuilt code: ok\n";
    return 0;
  }
  if (o.h1_spec.empty())
    throw CLI::ValidationError("verify needs --manifest or --h1/--h2");
  BinaryMatrix h1 = parse_code_spec(o.h1_spec).h;
  BinaryMatrix h2 = o.h2_spec.empty() ? h1 : parse_code_spec(o.h2_spec).h;
  GaugeFixReport rep = verify_gauge_fixing(h1, h2);
  std::cout << "k_product=" << rep.k_product << " k_hgp=" << rep.k_hgp
            << " gauge_qubits=" << rep.gauge_qubits_a << "+" << rep.gauge_qubits_b << "\n";
  if (!rep.ok) throw VerifyFailure{"gauge fixing: " + rep.detail};
  std::cout << "gauge fixing: ok\n";
  return 0;
}

// ---------------------------------------------------------------------------
// select-code

struct SelectOpts {
  size_t n = 60, b = 3, c = 6;
  size_t candidates = 100;
  double channel_p = 0.03;
  size_t trials = 2000;
  uint64_t seed = 1;
  size_t jobs = 0;
  bool show_rates = false;
  std::string alist_out;
};

int cmd_select(const SelectOpts& o) {
  SelectionReport report;
  ClassicalCode code = select_best_code(o.n, o.b, o.c, o.candidates, o.channel_p, o.trials,
                                        o.seed, o.jobs, &report);
  std::cout << "selected: " << code.name << " (candidate " << report.chosen_index << " of "
            << o.candidates << ", failure rate "
            << fmt("%.6g", report.failure_rates[report.chosen_index]) << ")\n";
  if (o.show_rates)
    for (size_t i = 0; i < report.failure_rates.size(); ++i)
      std::cout << "candidate " << i << ": " << fmt("%.6g", report.failure_rates[i]) << "\n";
  if (!o.alist_out.empty()) {
    std::string out = resolve_out(o.alist_out);
    write_file(out, to_alist(code.h));
    json cfg{{"n", o.n},          {"b", o.b},           {"c", o.c},
             {"candidates", o.candidates}, {"channel_p", o.channel_p}, {"trials", o.trials},
             {"seed", o.seed},    {"out", out}};
    write_run_manifest(out, "select-code", cfg);
    std::cout << "alist: " << out << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// fit

struct FitOpts {
  std::string csv;
  int qubit = -1;
};

int cmd_fit(const FitOpts& o) {
  std::ifstream in(o.csv, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + o.csv);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv");
  std::vector<std::pair<double, double>> curve;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 11) continue;
    int qubit_index = std::stoi(cells[7]);
    if (qubit_index != o.qubit) continue;
    double p = std::stod(cells[4]);
    double trials = std::stod(cells[5]);
    double failures = std::stod(cells[8]);
    if (trials > 0) curve.emplace_back(p, failures / trials);
  }
  FitResult fit = fit_power_law(curve);  // throws on fewer than two usable points
  std::cout << "fit: P = " << fmt("%.6g", fit.amplitude) << " * p^" << fmt("%.6g", fit.exponent)
            << " (rms log residual " << fmt("%.3g", fit.rms_log_residual) << ", "
            << fit.points_used << " points)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "subsystem-code workbench: build codes, verify them, run noise simulations, fit curves"};
  app.set_config("--config", "",
                 "INI config file: flat key=value entries, [section] per subcommand; "
                 "command-line flags override file values");
  app.add_option("--out-dir", g_out_dir, "directory for output files (SQC_OUT_DIR)")
      ->envname("SQC_OUT_DIR")
      ->capture_default_str();
  app.require_subcommand(0, 1);

  BuildOpts build;
  auto* b = app.add_subcommand("build", "construct a code and write its manifest");
  b->add_option("kind", build.kind, "bbs | shp | hgp")
      ->required()
      ->check(CLI::IsMember({"bbs", "shp", "hgp"}));
  b->add_option("--code", build.code_spec,
                "code spec: hamming7 | rep<N> | alist:<path> | ldpc:<n>,<b>,<c>,<seed>")
      ->capture_default_str();
  b->add_option("--code2", build.code2_spec, "second code (defaults to --code)");
  b->add_option("--h1", build.h1_spec, "hgp: first parity check's code spec");
  b->add_option("--h2", build.h2_spec, "hgp: second parity check's code spec");
  b->add_option("--q", build.q_mode,
                "bbs pairing matrix: default | identity | minimize | <matrix file>")
      ->capture_default_str();
  b->add_flag("--minimize-q", build.minimize_q, "shorthand for --q minimize");
  b->add_option("--q-attempts", build.q_attempts, "random draws for --q minimize")
      ->capture_default_str();
  b->add_option("--seed", build.seed, "seed for random constructions")->capture_default_str();
  b->add_option("--distance-cap", build.distance_cap,
                "give up on the distance search past 2^cap candidates")
      ->capture_default_str();
  b->add_flag("--require-distance", build.require_distance,
              "fail instead of reporting an unknown distance");
  b->add_option("-o,--out", build.out, "manifest path (default <kind>.json)");
  b->callback([&] { cmd_build(build); });

  SimulateOpts sim;
  auto* s = app.add_subcommand("simulate", "run a noise simulation over a grid of rates");
  s->add_option("--manifest", sim.manifest, "code manifest from build")->required();
  s->add_option("--mode", sim.mode, "pheno | circuit")
      ->required()
      ->check(CLI::IsMember({"pheno", "circuit"}));
  s->add_option("--estimator", sim.estimator, "direct | importance (pheno only)")
      ->check(CLI::IsMember({"direct", "importance"}))
      ->capture_default_str();
  s->add_option("--p", sim.p_list, "explicit grid of physical rates")->delimiter(',');
  s->add_option("--p-min", sim.p_min, "log grid start")->capture_default_str();
  s->add_option("--p-max", sim.p_max, "log grid end")->capture_default_str();
  s->add_option("--points", sim.points, "log grid size")->capture_default_str();
  s->add_option("--p-meas-scale", sim.p_meas_scale,
                "pheno: measurement flip rate = scale * p (0 = perfect measurements)")
      ->capture_default_str();
  s->add_option("--trials", sim.trials, "trials per grid point (cap when --min-failures is set)")
      ->capture_default_str();
  s->add_option("--min-failures", sim.min_failures,
                "grow trials (from 1000, doubling) until this many block failures or the cap")
      ->capture_default_str();
  s->add_option("--weight-max", sim.weight_max, "importance: largest planted fault weight")
      ->capture_default_str();
  s->add_option("--samples-per-weight", sim.samples_per_weight,
                "importance: samples per fault weight")
      ->capture_default_str();
  s->add_option("--decode-p", sim.decode_p, "importance: BP prior for the decoder")
      ->capture_default_str();
  s->add_option("--max-iters", sim.max_iters, "BP iteration cap")->capture_default_str();
  s->add_option("--seed", sim.seed, "master seed")->capture_default_str();
  s->add_option("--jobs", sim.jobs, "worker threads (0 = hardware)")->capture_default_str();
  s->add_option("-o,--out", sim.out, "csv path (default <mode>.csv)");
  s->callback([&] { cmd_simulate(sim); });

  VerifyOpts ver;
  auto* v = app.add_subcommand("verify", "check a manifest or a gauge-fixing pair");
  v->add_option("--manifest", ver.manifest, "code manifest to verify");
  v->add_option("--h1", ver.h1_spec, "code spec; verifies hgp(h1,h2) gauge-fixes the pair");
  v->add_option("--h2", ver.h2_spec, "second code spec (defaults to --h1)");
  v->callback([&] { cmd_verify(ver); });

  SelectOpts sel;
  auto* sc = app.add_subcommand("select-code", "pick the best biregular code by BP performance");
  sc->add_option("--n", sel.n, "variables (code length)")->required();
  sc->add_option("--b", sel.b, "variable degree")->capture_default_str();
  sc->add_option("--c", sel.c, "check degree")->capture_default_str();
  sc->add_option("--candidates", sel.candidates, "graphs to draw")->capture_default_str();
  sc->add_option("--channel-p", sel.channel_p, "BSC crossover rate")->capture_default_str();
  sc->add_option("--trials", sel.trials, "decoding trials per candidate")->capture_default_str();
  sc->add_option("--seed", sel.seed, "master seed")->capture_default_str();
  sc->add_option("--jobs", sel.jobs, "worker threads (0 = hardware)")->capture_default_str();
  sc->add_flag("--rates", sel.show_rates, "print every candidate's failure rate");
  sc->add_option("--alist-out", sel.alist_out, "write the chosen parity check as alist");
  sc->callback([&] { cmd_select(sel); });

  FitOpts fit;
  auto* f = app.add_subcommand("fit", "power-law fit of a simulation csv");
  f->add_option("--csv", fit.csv, "csv written by simulate")->required();
  f->add_option("--qubit", fit.qubit, "logical qubit index, -1 = block row")
      ->capture_default_str();
  f->callback([&] { cmd_fit(fit); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const VerifyFailure& e) {
    std::cerr << "verification failed: " << e.message << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  if (app.get_subcommands().empty()) {
    std::cout << app.help();
    return 1;
  }
  return 0;
}
