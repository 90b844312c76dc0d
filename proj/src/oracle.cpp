#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "irsroute/solver.hpp"

namespace irsroute {

namespace {

// Outward routing rule restated on the raw LoS map.
bool may_follow(const Scenario& s, const LosMap& los, int from, int to) {
  if (from == to || !los(from, to)) return false;
  if (from == 0) return s.is_irs(to);
  if (!s.is_irs(from)) return false;
  if (s.is_user(to)) return true;
  return s.is_irs(to) && s.distance(to, 0) > s.distance(from, 0);
}

std::vector<std::vector<int>> all_simple_paths(const Scenario& s,
                                               const LosMap& los,
                                               int target) {
  std::vector<std::vector<int>> paths;
  std::vector<int> stack{0};
  std::vector<char> on_path(s.num_nodes(), 0);
  on_path[0] = 1;
  std::function<void(int)> dfs = [&](int u) {
    for (int v = 0; v < s.num_nodes(); ++v) {
      if (on_path[v] || !may_follow(s, los, u, v)) continue;
      if (s.is_user(v)) {
        if (v != target) continue;
        stack.push_back(v);
        paths.push_back(stack);
        stack.pop_back();
        continue;
      }
      on_path[v] = 1;
      stack.push_back(v);
      dfs(v);
      stack.pop_back();
      on_path[v] = 0;
    }
  };
  dfs(0);
  return paths;
}

class DirectScorer {
 public:
  DirectScorer(const Scenario& s, BeamMode mode) : s_(s), mode_(mode) {
    if (mode == BeamMode::kDiscrete) {
      cb1_ = dft_codebook_irs(s.b1, s.m1);
      cb2_ = dft_codebook_irs(s.b2, s.m2);
    }
  }

  // -ln of the closed-form gain with full array gain at the BS.
  double cost(const std::vector<int>& nodes) {
    double log_gain = std::log(static_cast<double>(s_.n_b));
    for (size_t n = 0; n + 1 < nodes.size(); ++n) {
      const double d = s_.distance(nodes[n], nodes[n + 1]);
      log_gain += std::log(s_.beta / (d * d));
    }
    for (size_t n = 1; n + 1 < nodes.size(); ++n) {
      const double a = amplitude(nodes[n - 1], nodes[n], nodes[n + 1]);
      log_gain += 2.0 * std::log(a);
    }
    return -log_gain;
  }

 private:
  double amplitude(int i, int j, int r) {
    if (mode_ == BeamMode::kContinuous) return s_.elements();
    const auto key = std::make_tuple(i, j, r);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double a = search_passive_decomposed(compute_angles(s_, i, j, r),
                                               cb1_, cb2_, s_.d_i, s_.lambda)
                         .amplitude;
    cache_[key] = a;
    return a;
  }

  const Scenario& s_;
  BeamMode mode_;
  Codebook cb1_;
  Codebook cb2_;
  std::map<std::tuple<int, int, int>, double> cache_;
};

bool separated(const LosMap& los, const std::vector<int>& a,
               const std::vector<int>& b) {
  for (size_t x = 1; x < a.size(); ++x) {
    for (size_t y = 1; y < b.size(); ++y) {
      if (a[x] == b[y] || los(a[x], b[y])) return false;
    }
  }
  return true;
}

}  // namespace

RoutingSolution brute_force_oracle(const Scenario& s, BeamMode mode,
                                   double max_tuples) {
  const auto start = std::chrono::steady_clock::now();
  const LosMap los = compute_los_map(s);
  const int k_count = s.num_users();
  std::vector<std::vector<std::vector<int>>> paths(k_count);
  double tuples = 1.0;
  for (int k = 1; k <= k_count; ++k) {
    paths[k - 1] = all_simple_paths(s, los, s.user_node(k));
    tuples *= static_cast<double>(paths[k - 1].size());
  }
  if (tuples > max_tuples) {
    throw InstanceTooLarge("oracle instance has " + std::to_string(tuples) +
                           " path tuples");
  }

  DirectScorer scorer(s, mode);
  std::vector<std::vector<double>> costs(k_count);
  for (int k = 0; k < k_count; ++k) {
    for (const auto& p : paths[k]) costs[k].push_back(scorer.cost(p));
  }

  RoutingSolution sol;
  sol.scheme = "oracle";
  sol.mode = mode;
  sol.num_users = k_count;
  bool any = false;
  double best = kInfiniteCost;
  std::vector<int> best_pick;
  std::vector<int> pick(k_count, 0);
  std::function<void(int, double)> scan = [&](int k, double worst) {
    if (k == k_count) {
      if (!any || worst < best) {
        any = true;
        best = worst;
        best_pick = pick;
      }
      return;
    }
    for (size_t q = 0; q < paths[k].size(); ++q) {
      bool ok = true;
      for (int prev = 0; prev < k && ok; ++prev) {
        ok = separated(los, paths[prev][pick[prev]], paths[k][q]);
      }
      if (!ok) continue;
      pick[k] = static_cast<int>(q);
      scan(k + 1, std::max(worst, costs[k][q]));
    }
  };
  if (k_count > 0) scan(0, -kInfiniteCost);

  if (any) {
    const BeamGainTable table = build_gain_table(s, los, mode);
    std::vector<int> users;
    std::vector<std::vector<int>> chosen;
    for (int k = 0; k < k_count; ++k) {
      users.push_back(k + 1);
      chosen.push_back(paths[k][best_pick[k]]);
    }
    sol = assemble_solution(s, los, table, users, chosen);
    sol.scheme = "oracle";
    sol.clique_weight = best;
    sol.largest_clique = k_count;
  }
  sol.runtime_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return sol;
}

}  // namespace irsroute
