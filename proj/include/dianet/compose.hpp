#pragma once

#include <string>
#include <vector>

#include "dianet/model.hpp"

namespace dianet {

// A multi-component system: ordered components over one shared alphabet.
struct SystemSpec {
  std::string name;
  AlphabetPartition sigma;
  std::vector<Automaton> components;

  bool operator==(const SystemSpec&) const = default;
};

// Where a product transition comes from: one entry per participating
// component, sorted by component index.
struct TransOrigin {
  int component;
  TransId trans;  // transition id in that component's net
  auto operator<=>(const TransOrigin&) const = default;
};

struct ProductNet {
  LabelledNet net;
  std::vector<std::vector<TransOrigin>> origin;  // per product transition
  std::vector<int> component_of_place;           // per product place
};

// States become places, each automaton transition a net transition with
// singleton preset/postset, the initial state the only marked place.
LabelledNet automaton_to_net(const Automaton& a);

// Synchronized product of labelled nets. `alphabets[i]` is the
// synchronization alphabet of net i (the original component alphabet, which
// may be larger than the labels the net still uses). Observable labels in
// two or more alphabets are fused n-ary across all sharing nets; everything
// else is copied. A non-fault unobservable label in two alphabets is
// rejected.
ProductNet product(const std::vector<LabelledNet>& nets,
                   const std::vector<std::vector<ActionId>>& alphabets,
                   const AlphabetPartition& sigma);

// Restricts a product to the transitions that occur on some infinite run
// (and the places adjacent to them). Finite dead-end branches carry no
// infinite trace, so the trace set is unchanged; this is the reduction the
// usual drawn form of such nets applies.
ProductNet prune_unreachable(const ProductNet& pn,
                             std::size_t node_limit = kDefaultNodeLimit);

// Forward place-closure of the net without the f-labelled transitions:
// starting from the initial marking, keep adding non-f transitions whose
// preset is already covered, together with their postsets.
LabelledNet fault_free(const LabelledNet& net, ActionId fault);

// The view of component i: its own net composed with fault-free versions of
// all other components, synchronizing on the original alphabets.
ProductNet component_view(const SystemSpec& spec, int i, ActionId fault);

// Product of all component nets (the global system net).
ProductNet system_product(const SystemSpec& spec);

// Projection of a product run on component i: keeps the transitions that
// move component i and maps them to i's actions. The loop may project away,
// leaving a finite trace.
ProjectedTrace project_run(const ProductNet& pn, const Lasso& run, int i);
std::vector<ActionId> project_run(const ProductNet& pn,
                                  const std::vector<TransId>& run, int i);

}  // namespace dianet
