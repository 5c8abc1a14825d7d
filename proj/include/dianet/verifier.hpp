#pragma once

#include <utility>
#include <vector>

#include "dianet/model.hpp"

namespace dianet {

enum class Replica { one, two, fused };

// Twin plant for one fault: replica 1 is the net itself, replica 2 its
// fault-free version; equal observable labels are fused pairwise, everything
// unobservable is duplicated per replica.
struct VerifierNet {
  LabelledNet net;
  LabelledNet base;  // the net the verifier was built from
  std::vector<Replica> place_replica;
  std::vector<Replica> trans_replica;
  std::vector<TransId> fault_events;  // the f^1 transitions
  // Per verifier transition, the base-net transition each side performs
  // (-1 when that replica does not move).
  std::vector<TransId> side1;
  std::vector<TransId> side2;
};

VerifierNet build_verifier(const LabelledNet& net, ActionId fault,
                           const AlphabetPartition& sigma);

// Splits a verifier lasso into the pair of base-net lassos it stands for:
// first the replica-1 run (which may contain the fault), then the replica-2
// run (fault-free). Both have the same observable projection.
std::pair<Lasso, Lasso> split_trace(const VerifierNet& v, const Lasso& lasso);

}  // namespace dianet
