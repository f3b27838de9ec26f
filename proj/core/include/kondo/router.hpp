#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kondo/optimize.hpp"

namespace kondo {

struct RouterNode {
  std::string name;
  ChainSpec chain;
};

/// A dispatcher connection between two nodes; a single coupling runs one
/// quench, several are optimised over.
struct RouterLink {
  std::string a;
  std::string b;
  std::vector<double> j_m;
};

struct RouterPlan {
  std::vector<RouterNode> nodes;
  std::vector<RouterLink> pairs;

  /// Throws InvalidArgument for unknown or duplicate names and
  /// ExclusivityError when a node appears in more than one pair.
  void validate() const;
};

using RouteResult = std::map<std::pair<std::string, std::string>, OptimizationResult>;

/// Simulates every pair as an independent composite (node a on the left).
RouteResult route(const RouterPlan& plan, double t_max, const SolverConfig& cfg,
                  const Execution& exec = {});

}  // namespace kondo
