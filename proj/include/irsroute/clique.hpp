#ifndef IRSROUTE_CLIQUE_HPP
#define IRSROUTE_CLIQUE_HPP

#include <vector>

#include "irsroute/graphs.hpp"

namespace irsroute {

struct Clique {
  std::vector<int> members;  // member s lies in partition `partitions[s]`
  double max_weight = kInfiniteCost;
};

struct CliqueSearch {
  bool feasible = false;
  Clique best;
  // Largest r for which some clique over the first r searched partitions
  // exists.
  int largest_size = 0;
  long nodes_visited = 0;
};

// Recursive enumeration over the listed partitions (1-based user indices, in
// order): every adjacent choice is explored for all but the last partition,
// where only the lowest-weight compatible vertex is appended. The returned
// clique minimizes the maximum member weight; ties keep the first clique in
// enumeration order.
CliqueSearch clique_enumerate(const PathGraph& gp,
                              const std::vector<int>& partitions);
CliqueSearch clique_enumerate(const PathGraph& gp);

}  // namespace irsroute

#endif  // IRSROUTE_CLIQUE_HPP
