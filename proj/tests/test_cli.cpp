#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string output;
};

std::string bin() {
  const char* b = std::getenv("SQC_BIN");
  REQUIRE(b != nullptr);
  return b;
}

fs::path work_dir() {
  const char* w = std::getenv("SQC_WORK_DIR");
  REQUIRE(w != nullptr);
  fs::create_directories(w);
  return fs::path(w);
}

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = (env.empty() ? "" : env + " ") + "'" + bin() + "' " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run("--help").code == 0);
  CHECK(run("build --help").code == 0);
  CHECK(run("").code == 1);                          // no subcommand
  CHECK(run("build").code == 1);                     // missing kind
  CHECK(run("build bogus").code == 1);               // bad kind
  CHECK(run("frobnicate").code == 1);                // unknown subcommand
  CHECK(run("simulate --manifest x --mode warp").code == 1);
  CHECK(run("build bbs --code nonsense7").code == 1);  // bad code spec
}

TEST_CASE("build, verify, simulate, fit round trip") {
  fs::path dir = work_dir() / "roundtrip";
  fs::create_directories(dir);
  fs::path manifest = dir / "bbs.json";

  RunResult b = run("build bbs -o '" + manifest.string() + "'");
  INFO(b.output);
  CHECK(b.code == 0);
  CHECK(b.output.find("n_qubits: 21") != std::string::npos);
  CHECK(b.output.find("n_logical: 4") != std::string::npos);
  CHECK(b.output.find("distance: 3") != std::string::npos);
  CHECK(fs::exists(manifest));
  CHECK(fs::exists(dir / "bbs.json.run.json"));

  RunResult v = run("verify --manifest '" + manifest.string() + "'");
  INFO(v.output);
  CHECK(v.code == 0);
  CHECK(v.output.find("structural checks: ok") != std::string::npos);

  fs::path csv = dir / "pheno.csv";
  std::string sim_args = "simulate --manifest '" + manifest.string() +
                         "' --mode pheno --p 0.01,0.02 --trials 400 --seed 5 -o '" +
                         csv.string() + "'";
  RunResult s = run(sim_args);
  INFO(s.output);
  CHECK(s.code == 0);
  CHECK(fs::exists(csv));
  std::string first = slurp(csv);
  CHECK(first.find("bbs_hamming7_hamming7") != std::string::npos);

  // same seed, same bytes, including the run manifest
  std::string run1 = slurp(dir / "pheno.csv.run.json");
  RunResult s2 = run(sim_args);
  CHECK(s2.code == 0);
  CHECK(slurp(csv) == first);
  CHECK(slurp(dir / "pheno.csv.run.json") == run1);

  RunResult f = run("fit --csv '" + csv.string() + "'");
  INFO(f.output);
  CHECK(f.code == 0);
  CHECK(f.output.find("fit: P = ") != std::string::npos);

  RunResult fq = run("fit --csv '" + csv.string() + "' --qubit 0");
  CHECK(fq.code == 0);
}

TEST_CASE("corrupted manifests fail verification with exit 2") {
  fs::path dir = work_dir() / "corrupt";
  fs::create_directories(dir);
  fs::path manifest = dir / "code.json";
  REQUIRE(run("build bbs -o '" + manifest.string() + "'").code == 0);

  nlohmann::json j = nlohmann::json::parse(slurp(manifest));
  auto& support = j["derived"]["logical_x"][0];
  support[0] = (support[0].get<int>() + 1) % 21;
  std::ofstream(manifest, std::ios::binary) << j.dump(2) << "\n";

  RunResult v = run("verify --manifest '" + manifest.string() + "'");
  INFO(v.output);
  CHECK(v.code == 2);

  // simulate also refuses to run on it (runtime error, not a verify report)
  RunResult s = run("simulate --manifest '" + manifest.string() + "' --mode pheno --p 0.01 --trials 10");
  CHECK(s.code == 3);
}

TEST_CASE("gauge fixing verification mode") {
  RunResult ok = run("verify --h1 rep3");
  INFO(ok.output);
  CHECK(ok.code == 0);
  CHECK(ok.output.find("gauge fixing: ok") != std::string::npos);
  RunResult pair = run("verify --h1 rep3 --h2 hamming7");
  CHECK(pair.code == 0);
  CHECK(run("verify").code == 1);  // needs a mode
}

TEST_CASE("shp and hgp builds report their parameters") {
  fs::path dir = work_dir() / "kinds";
  fs::create_directories(dir);
  RunResult shp = run("build shp --code hamming7 -o '" + (dir / "shp.json").string() + "'");
  INFO(shp.output);
  CHECK(shp.code == 0);
  CHECK(shp.output.find("n_qubits: 49") != std::string::npos);
  CHECK(shp.output.find("n_logical: 16") != std::string::npos);

  RunResult hgp = run("build hgp --h1 rep3 -o '" + (dir / "hgp.json").string() + "'");
  INFO(hgp.output);
  CHECK(hgp.code == 0);
  CHECK(hgp.output.find("n_qubits: 13") != std::string::npos);
  CHECK(hgp.output.find("n_logical: 1") != std::string::npos);

  RunResult v = run("verify --manifest '" + (dir / "shp.json").string() + "'");
  CHECK(v.code == 0);
}

TEST_CASE("circuit mode simulation") {
  fs::path dir = work_dir() / "circuit";
  fs::create_directories(dir);
  fs::path manifest = dir / "bbs.json";
  REQUIRE(run("build bbs -o '" + manifest.string() + "'").code == 0);
  fs::path csv = dir / "circuit.csv";
  RunResult s = run("simulate --manifest '" + manifest.string() +
                    "' --mode circuit --p 0.005,0.02 --trials 300 --seed 3 -o '" +
                    csv.string() + "'");
  INFO(s.output);
  CHECK(s.code == 0);
  CHECK(s.output.find("pseudothreshold(block):") != std::string::npos);
  std::string text = slurp(csv);
  CHECK(text.find(",circuit,") != std::string::npos);
  // importance is a pheno-only estimator
  CHECK(run("simulate --manifest '" + manifest.string() +
            "' --mode circuit --estimator importance --p 0.01 --trials 10")
            .code == 1);
}

TEST_CASE("importance estimator writes scaled csv rows") {
  fs::path dir = work_dir() / "importance";
  fs::create_directories(dir);
  fs::path manifest = dir / "bbs.json";
  REQUIRE(run("build bbs -o '" + manifest.string() + "'").code == 0);
  fs::path csv = dir / "imp.csv";
  RunResult s = run("simulate --manifest '" + manifest.string() +
                    "' --mode pheno --estimator importance --p 0.01 --weight-max 3 "
                    "--samples-per-weight 200 --seed 2 -o '" +
                    csv.string() + "'");
  INFO(s.output);
  CHECK(s.code == 0);
  CHECK(slurp(csv).find(",importance,") != std::string::npos);
  // the run manifest records the raw strata
  nlohmann::json run_json = nlohmann::json::parse(slurp(dir / "imp.csv.run.json"));
  CHECK(run_json["config"]["strata"].size() == 3);
}

TEST_CASE("select-code runs end to end") {
  fs::path dir = work_dir() / "select";
  fs::create_directories(dir);
  fs::path alist = dir / "chosen.alist";
  RunResult s = run("select-code --n 16 --b 3 --c 6 --candidates 3 --trials 60 --seed 4 "
                    "--alist-out '" + alist.string() + "'");
  INFO(s.output);
  CHECK(s.code == 0);
  CHECK(s.output.find("selected: ") != std::string::npos);
  CHECK(fs::exists(alist));

  // the chosen parity check feeds back into a build
  RunResult b = run("build shp --code 'alist:" + alist.string() + "' -o '" +
                    (dir / "ldpc_shp.json").string() + "'");
  INFO(b.output);
  CHECK(b.code == 0);
}

TEST_CASE("config file values apply and flags override them") {
  fs::path dir = work_dir() / "config";
  fs::create_directories(dir);
  fs::path manifest = dir / "bbs.json";
  REQUIRE(run("build bbs -o '" + manifest.string() + "'").code == 0);
  fs::path cfg = dir / "sqc.ini";
  std::ofstream(cfg) << "[simulate]\n"
                     << "manifest=" << manifest.string() << "\n"
                     << "mode=pheno\n"
                     << "p=0.02\n"
                     << "trials=200\n"
                     << "seed=9\n"
                     << "out=" << (dir / "from_config.csv").string() << "\n";
  RunResult s = run("--config '" + cfg.string() + "' simulate");
  INFO(s.output);
  CHECK(s.code == 0);
  CHECK(fs::exists(dir / "from_config.csv"));

  RunResult o = run("--config '" + cfg.string() + "' simulate -o '" +
                    (dir / "override.csv").string() + "'");
  CHECK(o.code == 0);
  CHECK(fs::exists(dir / "override.csv"));
}

TEST_CASE("the output directory environment variable is honored") {
  fs::path dir = work_dir() / "outdir";
  fs::create_directories(dir);
  RunResult b = run("build bbs -o env_bbs.json", "SQC_OUT_DIR='" + dir.string() + "'");
  INFO(b.output);
  CHECK(b.code == 0);
  CHECK(fs::exists(dir / "env_bbs.json"));
}

TEST_CASE("require-distance fails when the cap is too small") {
  fs::path dir = work_dir() / "distcap";
  fs::create_directories(dir);
  RunResult r = run("build bbs --distance-cap 1 --require-distance -o '" +
                    (dir / "x.json").string() + "'");
  CHECK(r.code == 3);
  RunResult soft = run("build bbs --distance-cap 1 -o '" + (dir / "y.json").string() + "'");
  INFO(soft.output);
  CHECK(soft.code == 0);
  CHECK(soft.output.find("distance: unknown") != std::string::npos);
}
