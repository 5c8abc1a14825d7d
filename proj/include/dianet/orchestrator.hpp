#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>

#include "dianet/analysis.hpp"
#include "dianet/compose.hpp"

namespace dianet {

// Result of one (component, fault) task: is the component diagnosable on its
// own, and is its view (component composed with fault-free others)?
struct ComponentCheck {
  bool local_diagnosable = false;
  Verdict view;
};

using CheckKey = std::pair<int, ActionId>;  // (component index, fault)

struct DistributedReport {
  std::string system;
  std::map<CheckKey, ComponentCheck> per_component;
  std::map<ActionId, Verdict> aggregate;
  std::set<ActionId> fallback_used;
  std::map<ActionId, std::string> errors;  // per-fault task failures
};

ComponentCheck check_component(const SystemSpec& spec, int i, ActionId fault,
                               std::size_t node_limit = kDefaultNodeLimit);

// Combines per-component results: one failing view refutes diagnosability
// of the whole system and its witness lifts to the global net; all
// components and views passing establishes it. Anything else is
// inconclusive.
std::map<ActionId, Verdict> aggregate(
    const SystemSpec& spec, const std::map<CheckKey, ComponentCheck>& results);

// Runs every (component, fault) check as an independent task (OpenMP when
// available), aggregates, and optionally falls back to the global check for
// inconclusive faults. Output does not depend on the worker count.
DistributedReport run_distributed(const SystemSpec& spec, bool fallback,
                                  int jobs = 0,  // 0 = available parallelism
                                  std::size_t node_limit = kDefaultNodeLimit);

// Global twin-plant check on the full product.
Verdict check_global(const SystemSpec& spec, ActionId fault,
                     std::size_t node_limit = kDefaultNodeLimit);

}  // namespace dianet
