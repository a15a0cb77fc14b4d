#include "sqc/manifest.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sqc {

namespace {

using nlohmann::json;

json matrix_json(const BinaryMatrix& m) { return m.to_text(); }

BinaryMatrix matrix_from_json(const json& j) {
  return BinaryMatrix::from_text(j.get<std::string>());
}

json classical_json(const ClassicalCode& c) {
  json j;
  j["name"] = c.name;
  j["n"] = c.n;
  j["k"] = c.k;
  if (c.distance)
    j["distance"] = *c.distance;
  else
    j["distance"] = nullptr;
  j["g"] = matrix_json(c.g);
  j["h"] = matrix_json(c.h);
  return j;
}

ClassicalCode classical_from_json(const json& j) {
  ClassicalCode c;
  c.name = j.at("name").get<std::string>();
  c.n = j.at("n").get<size_t>();
  c.k = j.at("k").get<size_t>();
  if (!j.at("distance").is_null()) c.distance = j.at("distance").get<size_t>();
  c.g = matrix_from_json(j.at("g"));
  c.h = matrix_from_json(j.at("h"));
  if (c.g.cols() != c.n || c.h.cols() != c.n || c.g.rows() != c.k)
    throw std::runtime_error("classical code dimensions do not match its matrices");
  return c;
}

json support_lists(const std::vector<PauliOp>& ops, bool x_part) {
  json arr = json::array();
  for (const PauliOp& op : ops) {
    json row = json::array();
    for (size_t q : (x_part ? op.x : op.z).ones()) row.push_back(q);
    arr.push_back(std::move(row));
  }
  return arr;
}

json layout_json(const SubsystemCode& code) {
  json arr = json::array();
  for (const QubitSite& s : code.layout)
    arr.push_back(json::array({int(s.lattice), s.row, s.col}));
  return arr;
}

json derived_json(const SubsystemCode& code) {
  json j;
  j["name"] = code.name;
  j["n_qubits"] = code.n_qubits;
  j["n_logical"] = code.n_logical;
  j["layout"] = layout_json(code);
  j["gauge_x"] = support_lists(code.gauge_x, true);
  j["gauge_z"] = support_lists(code.gauge_z, false);
  j["stab_x"] = support_lists(code.stab_x, true);
  j["stab_z"] = support_lists(code.stab_z, false);
  j["logical_x"] = support_lists(code.logical_x, true);
  j["logical_z"] = support_lists(code.logical_z, false);
  return j;
}

void check_derived(const json& stored, const SubsystemCode& rebuilt) {
  json fresh = derived_json(rebuilt);
  for (const char* key : {"n_qubits", "n_logical", "layout", "gauge_x", "gauge_z", "stab_x",
                          "stab_z", "logical_x", "logical_z"})
    if (stored.at(key) != fresh.at(key))
      throw std::runtime_error(std::string("manifest does not match the rebuilt code: ") + key);
}

}  // namespace

const SubsystemCode& CodeBundle::code() const {
  if (kind == "bbs" && bbs) return bbs->code;
  if (kind == "shp" && shp) return shp->code;
  if (kind == "hgp" && hgp) return hgp->code;
  throw std::runtime_error("empty code bundle");
}

std::string save_code_manifest(const CodeBundle& bundle) {
  json j;
  j["manifest_version"] = kManifestVersion;
  j["tool_version"] = kToolVersion;
  j["kind"] = bundle.kind;
  json inputs;
  if (bundle.kind == "bbs" && bundle.bbs) {
    inputs["c1"] = classical_json(bundle.bbs->classical);
    inputs["c2"] = classical_json(bundle.bbs->classical2);
    inputs["q"] = matrix_json(bundle.bbs->q);
  } else if (bundle.kind == "shp" && bundle.shp) {
    inputs["h1"] = matrix_json(bundle.shp->h1);
    inputs["h2"] = matrix_json(bundle.shp->h2);
  } else if (bundle.kind == "hgp" && bundle.hgp) {
    inputs["h1"] = matrix_json(bundle.hgp->h1);
    inputs["h2"] = matrix_json(bundle.hgp->h2);
  } else {
    throw std::runtime_error("cannot save an empty code bundle");
  }
  j["inputs"] = inputs;
  j["derived"] = derived_json(bundle.code());
  return j.dump(2) + "\n";
}

CodeBundle load_code_manifest(const std::string& json_text) {
  json j = json::parse(json_text);
  if (j.at("manifest_version").get<int>() != kManifestVersion)
    throw std::runtime_error("unsupported manifest version");
  CodeBundle bundle;
  bundle.kind = j.at("kind").get<std::string>();
  const json& inputs = j.at("inputs");
  if (bundle.kind == "bbs") {
    bundle.bbs = build_bbs(classical_from_json(inputs.at("c1")),
                           classical_from_json(inputs.at("c2")),
                           matrix_from_json(inputs.at("q")));
  } else if (bundle.kind == "shp") {
    bundle.shp = build_shp(matrix_from_json(inputs.at("h1")), matrix_from_json(inputs.at("h2")));
  } else if (bundle.kind == "hgp") {
    bundle.hgp = build_hgp(matrix_from_json(inputs.at("h1")), matrix_from_json(inputs.at("h2")));
  } else {
    throw std::runtime_error("unknown code kind: " + bundle.kind);
  }
  check_derived(j.at("derived"), bundle.code());
  return bundle;
}

SubsystemCode parse_manifest_code(const std::string& json_text) {
  json j = json::parse(json_text);
  if (j.at("manifest_version").get<int>() != kManifestVersion)
    throw std::runtime_error("unsupported manifest version");
  const json& d = j.at("derived");
  SubsystemCode code;
  code.name = d.at("name").get<std::string>();
  code.n_qubits = d.at("n_qubits").get<size_t>();
  code.n_logical = d.at("n_logical").get<size_t>();
  for (const json& site : d.at("layout")) {
    int lat = site.at(0).get<int>();
    if (lat < 0 || lat > 2) throw std::runtime_error("bad lattice tag in layout");
    code.layout.push_back(
        {static_cast<Lattice>(lat), site.at(1).get<uint32_t>(), site.at(2).get<uint32_t>()});
  }
  auto ops_from = [&](const char* key, bool x_part) {
    std::vector<PauliOp> ops;
    for (const json& lst : d.at(key)) {
      std::vector<size_t> sup = lst.get<std::vector<size_t>>();
      ops.push_back(x_part ? PauliOp::x_op(code.n_qubits, sup)
                           : PauliOp::z_op(code.n_qubits, sup));
    }
    return ops;
  };
  code.gauge_x = ops_from("gauge_x", true);
  code.gauge_z = ops_from("gauge_z", false);
  code.stab_x = ops_from("stab_x", true);
  code.stab_z = ops_from("stab_z", false);
  code.logical_x = ops_from("logical_x", true);
  code.logical_z = ops_from("logical_z", false);
  return code;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace sqc
