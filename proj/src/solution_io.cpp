#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "irsroute/solver.hpp"

namespace irsroute {

using nlohmann::json;

namespace {

std::string node_list(const std::vector<int>& nodes) {
  std::string out;
  for (size_t n = 0; n < nodes.size(); ++n) {
    if (n) out += "-";
    out += std::to_string(nodes[n]);
  }
  return out;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(); }

double number_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  return j[key].get<double>();
}

}  // namespace

std::vector<Violation> validate_routing(const Scenario& s, const LosMap& los,
                                        const RoutingSolution& solution) {
  std::vector<Violation> found;
  if (!solution.feasible) return found;
  std::set<int> users;
  for (const UserRoute& r : solution.routes) {
    const std::string who = "user " + std::to_string(r.user);
    if (r.user < 1 || r.user > s.num_users() || !users.insert(r.user).second) {
      found.push_back({"structure", who + " is unknown or routed twice"});
      continue;
    }
    const auto& n = r.nodes;
    const bool ends_ok = n.size() >= 3 && n.front() == 0 &&
                         n.back() == s.user_node(r.user);
    bool interior_ok = ends_ok;
    for (size_t x = 1; ends_ok && x + 1 < n.size(); ++x) {
      if (n[x] < 0 || n[x] >= s.num_nodes() || !s.is_irs(n[x])) {
        interior_ok = false;
      }
    }
    if (!interior_ok) {
      found.push_back({"structure", who + " path " + node_list(n) +
                                        " is not BS, IRSs..., user"});
      continue;
    }
    std::set<int> seen;
    for (size_t x = 1; x + 1 < n.size(); ++x) {
      if (!seen.insert(n[x]).second) {
        found.push_back({"distinct-irs", who + " reflects off IRS " +
                                             std::to_string(n[x]) +
                                             " more than once"});
      }
    }
    for (size_t x = 0; x + 1 < n.size(); ++x) {
      if (!los(n[x], n[x + 1])) {
        found.push_back({"los-hop", who + " hop " + std::to_string(n[x]) +
                                        "->" + std::to_string(n[x + 1]) +
                                        " has no line of sight"});
      }
    }
  }
  if (!found.empty()) return found;

  const auto& routes = solution.routes;
  for (size_t a = 0; a < routes.size(); ++a) {
    for (size_t b = a + 1; b < routes.size(); ++b) {
      for (size_t x = 1; x < routes[a].nodes.size(); ++x) {
        for (size_t y = 1; y < routes[b].nodes.size(); ++y) {
          const int u = routes[a].nodes[x];
          const int v = routes[b].nodes[y];
          const std::string pair = "users " + std::to_string(routes[a].user) +
                                   " and " + std::to_string(routes[b].user);
          if (u == v) {
            found.push_back({"path-separation",
                             pair + " share node " + std::to_string(u)});
          } else if (los(u, v)) {
            found.push_back({"path-separation",
                             pair + " have LoS between nodes " +
                                 std::to_string(u) + " and " +
                                 std::to_string(v)});
          }
        }
      }
    }
  }
  return found;
}

std::string solution_to_json_text(const RoutingSolution& sol) {
  json doc;
  doc["format"] = "irsroute-solution";
  doc["version"] = 1;
  doc["scheme"] = sol.scheme;
  doc["mode"] = to_string(sol.mode);
  doc["feasible"] = sol.feasible;
  doc["q"] = sol.q;
  doc["num_users"] = sol.num_users;
  doc["admitted"] = sol.admitted;
  doc["objective"] = finite_or_null(sol.objective);
  doc["objective_db"] = finite_or_null(sol.objective_db());
  doc["cascade_objective"] = finite_or_null(sol.cascade_objective);
  doc["clique_weight"] = finite_or_null(sol.clique_weight);
  doc["largest_clique"] = sol.largest_clique;
  doc["clique_nodes"] = sol.clique_nodes;
  doc["runtime_ms"] = sol.runtime_ms;
  json routes = json::array();
  for (const UserRoute& r : sol.routes) {
    json jr;
    jr["user"] = r.user;
    jr["nodes"] = r.nodes;
    jr["irs"] = r.irs();
    json hops = json::array();
    for (const HopBeam& h : r.hops) {
      hops.push_back({{"prev", h.prev},
                      {"irs", h.irs},
                      {"next", h.next},
                      {"horizontal_index", h.horizontal_index},
                      {"vertical_index", h.vertical_index},
                      {"amplitude", h.amplitude}});
    }
    jr["hops"] = hops;
    jr["bs_index"] = r.bs_index;
    jr["bs_amplitude"] = r.bs_amplitude;
    jr["phase"] = r.phase;
    jr["cost"] = r.cost;
    jr["model_gain"] = r.model_gain;
    jr["gain_db"] = finite_or_null(to_db(r.model_gain));
    jr["cascade_gain"] = r.cascade_gain;
    jr["cascade_gain_db"] = finite_or_null(to_db(r.cascade_gain));
    routes.push_back(jr);
  }
  doc["routes"] = routes;
  return doc.dump(2) + "\n";
}

RoutingSolution solution_from_json_text(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("format") != "irsroute-solution") {
      throw std::runtime_error("not a solution document");
    }
    RoutingSolution sol;
    sol.scheme = doc.value("scheme", std::string("proposed"));
    sol.mode = beam_mode_from_string(doc.at("mode").get<std::string>());
    sol.feasible = doc.at("feasible").get<bool>();
    sol.q = doc.value("q", 0);
    sol.num_users = doc.value("num_users", 0);
    sol.admitted = doc.value("admitted", std::vector<int>{});
    sol.objective = number_or(doc, "objective", 0.0);
    sol.cascade_objective = number_or(doc, "cascade_objective", 0.0);
    sol.clique_weight = number_or(doc, "clique_weight", kInfiniteCost);
    sol.largest_clique = doc.value("largest_clique", 0);
    sol.clique_nodes = doc.value("clique_nodes", 0L);
    sol.runtime_ms = number_or(doc, "runtime_ms", 0.0);
    for (const json& jr : doc.at("routes")) {
      UserRoute r;
      r.user = jr.at("user").get<int>();
      r.nodes = jr.at("nodes").get<std::vector<int>>();
      for (const json& h : jr.value("hops", json::array())) {
        HopBeam hop;
        hop.prev = h.at("prev").get<int>();
        hop.irs = h.at("irs").get<int>();
        hop.next = h.at("next").get<int>();
        hop.horizontal_index = h.value("horizontal_index", -1);
        hop.vertical_index = h.value("vertical_index", -1);
        hop.amplitude = h.value("amplitude", 0.0);
        r.hops.push_back(hop);
      }
      r.bs_index = jr.value("bs_index", -1);
      r.bs_amplitude = jr.value("bs_amplitude", 0.0);
      r.phase = jr.value("phase", 0.0);
      r.cost = jr.value("cost", 0.0);
      r.model_gain = jr.value("model_gain", 0.0);
      r.cascade_gain = jr.value("cascade_gain", 0.0);
      sol.routes.push_back(r);
    }
    return sol;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed solution: ") + e.what());
  }
}

void save_solution(const RoutingSolution& solution, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write solution file " + path);
  out << solution_to_json_text(solution);
}

RoutingSolution load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open solution file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return solution_from_json_text(buf.str());
}

}  // namespace irsroute
