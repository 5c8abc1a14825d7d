#pragma once

#include "dianet/compose.hpp"

namespace dianet::fixtures {

// The running four-component example: A and B form one system, C and D the
// other. Observables o1..o5, unobservables u1..u3, single fault f.

struct AB {
  AlphabetPartition sigma;
  ActionId o1, o2, o3, u1, f;
  Automaton A, B;
  SystemSpec spec;
};

struct CD {
  AlphabetPartition sigma;
  ActionId o1, o2, o3, o4, o5, u2, u3, f;
  Automaton C, D;
  SystemSpec spec;
};

AB make_ab();
CD make_cd();

// Two-component system whose first component is non-diagnosable on its own
// while both views are diagnosable: the distributed criterion alone is
// inconclusive, the global check resolves it as diagnosable.
SystemSpec make_inconclusive();

}  // namespace dianet::fixtures
