#pragma once

#include <set>
#include <vector>

#include "dianet/model.hpp"

namespace dianet {

// Finite complete prefix of a safe net's unfolding. Conditions instantiate
// places, events instantiate transitions; the structure is acyclic with at
// most one producer per condition. Successors of cut-off events are omitted,
// yet every reachable marking of the net is the mark of some configuration.
struct OccurrenceNet {
  struct Condition {
    PlaceId place;
    int producer;  // event index, -1 for initial conditions
  };
  struct Event {
    TransId trans;
    std::vector<int> preset;   // condition ids, sorted
    std::vector<int> postset;  // condition ids, sorted
    bool cutoff = false;
    std::vector<int> local_config;  // event ids, sorted (includes itself)
  };

  LabelledNet base;
  std::vector<Condition> conditions;
  std::vector<Event> events;

  std::vector<int> cutoffs() const;
  int num_noncutoff_events() const;
  Marking mark_of(const std::vector<int>& configuration) const;
};

// Causally closed, conflict-free event set.
struct Configuration {
  std::vector<int> events;  // sorted event ids
};

// Checks causal closure and conflict-freedom (no condition consumed twice).
bool is_configuration(const OccurrenceNet& on, const Configuration& config);

OccurrenceNet unfold(const LabelledNet& net,
                     std::size_t event_limit = kDefaultNodeLimit);

// All marks representable by configurations of the prefix; for a complete
// prefix this is exactly the set of reachable markings.
std::set<Marking> prefix_markings(const OccurrenceNet& on);

// Does any event of the prefix (cut-offs included) carry the fault label?
// Necessary for the existence of a fault run, not sufficient.
bool fault_reachable(const OccurrenceNet& on, ActionId fault);

}  // namespace dianet
