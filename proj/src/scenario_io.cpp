#include <fstream>
#include <sstream>

#include <json.hpp>

#include "irsroute/scene.hpp"

namespace irsroute {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "irsroute-scenario";
constexpr int kVersion = 1;

Vec3 read_vec3(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) {
    throw ScenarioError(what + " must be an array of 3 numbers");
  }
  Vec3 v;
  for (int c = 0; c < 3; ++c) {
    if (!j[c].is_number()) {
      throw ScenarioError(what + " must be an array of 3 numbers");
    }
    v[c] = j[c].get<double>();
  }
  return v;
}

json write_vec3(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

template <typename T>
void read_optional(const json& doc, const char* key, T& out) {
  if (!doc.contains(key)) return;
  try {
    out = doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ScenarioError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ScenarioError("scenario must be a JSON object");
  if (doc.contains("format") && doc["format"] != kFormat) {
    throw ScenarioError("unexpected document format");
  }
  if (doc.contains("version") && doc["version"] != kVersion) {
    throw ScenarioError("unsupported scenario version");
  }

  Scenario s;
  read_optional(doc, "lambda", s.lambda);
  s.beta = 0.0;
  read_optional(doc, "beta", s.beta);
  if (!doc.contains("beta") && s.lambda > 0.0) s.beta = free_space_beta(s.lambda);
  read_optional(doc, "d_a", s.d_a);
  read_optional(doc, "d_i", s.d_i);
  read_optional(doc, "n_b", s.n_b);
  read_optional(doc, "m1", s.m1);
  read_optional(doc, "m2", s.m2);
  read_optional(doc, "b1", s.b1);
  read_optional(doc, "b2", s.b2);
  read_optional(doc, "d0", s.d0);
  read_optional(doc, "los_threshold", s.los_threshold);
  read_optional(doc, "alpha", s.alpha);

  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw ScenarioError("scenario needs a 'nodes' array");
  }
  for (const json& jn : doc["nodes"]) {
    if (!jn.is_object() || !jn.contains("id") || !jn.contains("kind") ||
        !jn.contains("position")) {
      throw ScenarioError("each node needs id, kind and position");
    }
    if (!jn["id"].is_number_integer() || !jn["kind"].is_string()) {
      throw ScenarioError("node id must be an integer and kind a string");
    }
    Node n;
    n.id = jn["id"].get<int>();
    const std::string where = "node " + std::to_string(n.id);
    n.kind = node_kind_from_string(jn["kind"].get<std::string>());
    n.position = read_vec3(jn["position"], where + " position");
    if (jn.contains("facing")) {
      n.facing = read_vec3(jn["facing"], where + " facing");
    } else if (n.kind != NodeKind::kUser) {
      throw ScenarioError(where + " needs a facing vector");
    }
    s.nodes.push_back(n);
  }
  if (doc.contains("los_overrides")) {
    for (const json& jo : doc["los_overrides"]) {
      LosOverride o;
      try {
        o.i = jo.at("i").get<int>();
        o.j = jo.at("j").get<int>();
        o.los = jo.at("los").get<bool>();
      } catch (const json::exception&) {
        throw ScenarioError("los override needs integer i, j and boolean los");
      }
      s.los_overrides.push_back(o);
    }
  }
  s.validate();
  return s;
}

std::string scenario_to_json_text(const Scenario& s) {
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["lambda"] = s.lambda;
  doc["beta"] = s.beta;
  doc["d_a"] = s.d_a;
  doc["d_i"] = s.d_i;
  doc["n_b"] = s.n_b;
  doc["m1"] = s.m1;
  doc["m2"] = s.m2;
  doc["b1"] = s.b1;
  doc["b2"] = s.b2;
  doc["d0"] = s.d0;
  doc["los_threshold"] = s.los_threshold;
  doc["alpha"] = s.alpha;
  json nodes = json::array();
  for (const Node& n : s.nodes) {
    json jn;
    jn["id"] = n.id;
    jn["kind"] = to_string(n.kind);
    jn["position"] = write_vec3(n.position);
    if (n.kind != NodeKind::kUser) jn["facing"] = write_vec3(n.facing);
    nodes.push_back(jn);
  }
  doc["nodes"] = nodes;
  json overrides = json::array();
  for (const LosOverride& o : s.los_overrides) {
    overrides.push_back({{"i", o.i}, {"j", o.j}, {"los", o.los}});
  }
  doc["los_overrides"] = overrides;
  return doc.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str());
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ScenarioError("cannot write scenario file " + path);
  out << scenario_to_json_text(s);
}

}  // namespace irsroute
