#include "irsroute/clique.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace irsroute {

namespace {

class RecEnum {
 public:
  RecEnum(const PathGraph& gp, const std::vector<int>& partitions)
      : gp_(gp), parts_(partitions) {}

  CliqueSearch run() {
    if (!parts_.empty()) descend(0);
    return out_;
  }

 private:
  bool compatible(int v) const {
    if (gp_.path(v).is_virtual) return false;
    for (int u : current_) {
      if (!gp_.adjacent(u, v)) return false;
    }
    return true;
  }

  void record(double max_weight) {
    if (!out_.feasible || max_weight < out_.best.max_weight) {
      out_.feasible = true;
      out_.best.members = current_;
      out_.best.max_weight = max_weight;
    }
  }

  void descend(size_t depth) {
    ++out_.nodes_visited;
    const int user = parts_[depth];
    const bool last = depth + 1 == parts_.size();
    int chosen = -1;
    for (int q = 1; q <= gp_.per_user(); ++q) {
      const int v = gp_.vertex(user, q);
      if (!compatible(v)) continue;
      out_.largest_size =
          std::max(out_.largest_size, static_cast<int>(depth) + 1);
      if (last) {
        if (chosen < 0 || gp_.weight(v) < gp_.weight(chosen)) chosen = v;
        continue;
      }
      current_.push_back(v);
      weights_.push_back(std::max(
          weights_.empty() ? -kInfiniteCost : weights_.back(), gp_.weight(v)));
      descend(depth + 1);
      current_.pop_back();
      weights_.pop_back();
    }
    if (last && chosen >= 0) {
      const double prefix = weights_.empty() ? -kInfiniteCost : weights_.back();
      current_.push_back(chosen);
      record(std::max(prefix, gp_.weight(chosen)));
      current_.pop_back();
    }
  }

  const PathGraph& gp_;
  const std::vector<int>& parts_;
  std::vector<int> current_;
  std::vector<double> weights_;
  CliqueSearch out_;
};

}  // namespace

CliqueSearch clique_enumerate(const PathGraph& gp,
                              const std::vector<int>& partitions) {
  return RecEnum(gp, partitions).run();
}

CliqueSearch clique_enumerate(const PathGraph& gp) {
  std::vector<int> all(gp.num_users());
  std::iota(all.begin(), all.end(), 1);
  return clique_enumerate(gp, all);
}

}  // namespace irsroute
