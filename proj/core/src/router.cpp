#include "kondo/router.hpp"

#include <set>

#include "kondo/errors.hpp"

namespace kondo {

void RouterPlan::validate() const {
  std::set<std::string> names;
  for (const auto& node : nodes) {
    if (node.name.empty()) throw InvalidArgument("router node without a name");
    if (!names.insert(node.name).second) {
      throw InvalidArgument("duplicate router node '" + node.name + "'");
    }
    node.chain.validate();
  }
  std::set<std::string> used;
  for (const auto& link : pairs) {
    for (const auto* name : {&link.a, &link.b}) {
      if (!names.contains(*name)) throw InvalidArgument("router pair names unknown node '" + *name + "'");
    }
    if (link.a == link.b) throw InvalidArgument("router pair connects '" + link.a + "' to itself");
    if (link.j_m.empty()) throw InvalidArgument("router pair without a junction coupling");
    for (const auto* name : {&link.a, &link.b}) {
      if (!used.insert(*name).second) {
        throw ExclusivityError("router node '" + *name + "' appears in more than one pair", *name);
      }
    }
  }
}

RouteResult route(const RouterPlan& plan, double t_max, const SolverConfig& cfg,
                  const Execution& exec) {
  plan.validate();
  const auto chain_of = [&](const std::string& name) -> const ChainSpec& {
    for (const auto& node : plan.nodes) {
      if (node.name == name) return node.chain;
    }
    throw InvalidArgument("unknown router node '" + name + "'");
  };
  std::vector<OptimizationResult> results(plan.pairs.size());
  parallel_for(plan.pairs.size(), exec, [&](std::size_t i) {
    const auto& link = plan.pairs[i];
    results[i] = optimize_jm(chain_of(link.a), chain_of(link.b), link.j_m, t_max, cfg);
  });
  RouteResult out;
  for (std::size_t i = 0; i < plan.pairs.size(); ++i) {
    out.emplace(std::make_pair(plan.pairs[i].a, plan.pairs[i].b), std::move(results[i]));
  }
  return out;
}

}  // namespace kondo
