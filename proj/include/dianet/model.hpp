#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dianet/errors.hpp"

namespace dianet {

using ActionId = int;
using PlaceId = int;
using TransId = int;
using StateId = int;

inline constexpr std::size_t kDefaultNodeLimit = 1'000'000;

// Global action alphabet of one system, partitioned into observable and
// unobservable actions, with faults a subset of the unobservable ones.
// Actions are identified by their declaration index; names are unique.
class AlphabetPartition {
 public:
  ActionId add_observable(const std::string& name);
  ActionId add_unobservable(const std::string& name, bool fault = false);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(ActionId a) const;
  bool is_observable(ActionId a) const;
  bool is_unobservable(ActionId a) const { return !is_observable(a); }
  bool is_fault(ActionId a) const;
  std::optional<ActionId> find(const std::string& name) const;
  ActionId require(const std::string& name) const;

  std::vector<ActionId> faults() const;
  std::vector<ActionId> observables() const;

  // Rank of each action when sorted by name; used as the label order for
  // canonical witness selection.
  std::vector<int> name_ranks() const;

  bool operator==(const AlphabetPartition&) const = default;

 private:
  ActionId add(const std::string& name, bool observable, bool fault);

  std::vector<std::string> names_;
  std::vector<bool> observable_;
  std::vector<bool> fault_;
  std::map<std::string, ActionId> index_;
};

struct AutomatonTransition {
  StateId src = 0;
  ActionId action = 0;
  StateId dst = 0;
  bool operator==(const AutomatonTransition&) const = default;
};

// Component specification. The transition relation may be nondeterministic.
// The alphabet of a component is exactly the set of actions on its
// transitions.
struct Automaton {
  std::string name;
  std::vector<std::string> states;
  StateId initial = 0;
  std::vector<AutomatonTransition> transitions;

  StateId add_state(const std::string& state_name);
  void add_transition(StateId src, ActionId action, StateId dst);
  std::vector<ActionId> alphabet() const;  // sorted, unique

  bool operator==(const Automaton&) const = default;
};

// A marking of a safe net: the set of marked places, kept sorted.
struct Marking {
  std::vector<PlaceId> places;

  bool contains(PlaceId p) const;
  auto operator<=>(const Marking&) const = default;
};

Marking make_marking(std::vector<PlaceId> places);

// Safe labelled Petri net. Places and transitions are indexed in creation
// order; every deterministic output of the toolkit iterates in that order.
struct LabelledNet {
  std::string name;
  std::vector<std::string> place_names;
  std::vector<std::string> trans_names;
  std::vector<ActionId> label;                // per transition
  std::vector<std::vector<PlaceId>> pre;      // sorted place ids
  std::vector<std::vector<PlaceId>> post;     // sorted place ids
  Marking initial;

  int num_places() const { return static_cast<int>(place_names.size()); }
  int num_transitions() const { return static_cast<int>(trans_names.size()); }

  PlaceId add_place(const std::string& place_name);
  TransId add_transition(const std::string& trans_name, ActionId action,
                         std::vector<PlaceId> preset,
                         std::vector<PlaceId> postset);
  std::optional<TransId> find_transition(const std::string& trans_name) const;
  std::vector<ActionId> used_actions() const;  // sorted, unique
};

// Transitions enabled in m, in transition-id order.
std::vector<TransId> enabled(const LabelledNet& net, const Marking& m);

bool is_enabled(const LabelledNet& net, const Marking& m, TransId t);

// Successor marking; throws NotEnabled / SafenessViolation.
Marking fire(const LabelledNet& net, const Marking& m, TransId t);

// Explicit reachability graph. Node 0 is the initial marking; nodes are
// numbered in BFS discovery order, edges grouped by source and ordered by
// transition id.
struct ReachGraph {
  std::vector<Marking> nodes;
  struct Edge {
    int src;
    TransId trans;
    int dst;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> out;  // node -> edge indices
  std::map<Marking, int> index;

  int find(const Marking& m) const;
};

ReachGraph reachability_graph(const LabelledNet& net,
                              std::size_t node_limit = kDefaultNodeLimit);

// An infinite run/trace presented finitely: a stem followed by a loop fired
// forever. The loop of a well-formed lasso is non-empty.
struct Lasso {
  std::vector<TransId> stem;
  std::vector<TransId> loop;
  auto operator<=>(const Lasso&) const = default;
};

struct TraceLasso {
  std::vector<ActionId> stem;
  std::vector<ActionId> loop;
  auto operator<=>(const TraceLasso&) const = default;
};

// Result of projecting a run or trace: the loop part may project away
// entirely, leaving a finite trace.
struct ProjectedTrace {
  std::vector<ActionId> stem;
  std::vector<ActionId> loop;  // empty = finite
  bool infinite() const { return !loop.empty(); }
  auto operator<=>(const ProjectedTrace&) const = default;
};

// Replays a lasso on a net: the stem must fire from the initial marking and
// the loop must return to the marking it starts in.
bool replays(const LabelledNet& net, const Lasso& lasso);

// Marking reached at the end of the stem (loop entry); throws on invalid.
Marking stem_end(const LabelledNet& net, const Lasso& lasso);

TraceLasso to_trace(const LabelledNet& net, const Lasso& lasso);

// Observable projection: erases unobservable actions, preserving order.
std::vector<ActionId> obs_projection(const std::vector<ActionId>& trace,
                                     const AlphabetPartition& sigma);

// Lasso form: stem and loop are projected separately. Throws
// UnobservableCycle when a non-empty loop projects to nothing.
TraceLasso obs_projection(const TraceLasso& trace,
                          const AlphabetPartition& sigma);

// Liveness / unobservable-cycle checks on a component. Violations are
// reported, not fatal.
struct AssumptionReport {
  struct Violation {
    int assumption;  // 1 = dead reachable state, 2 = unobservable cycle
    std::string detail;
  };
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

AssumptionReport validate_assumptions(const Automaton& a,
                                      const AlphabetPartition& sigma);

}  // namespace dianet
