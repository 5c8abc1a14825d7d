#include "dianet/verifier.hpp"

#include <algorithm>

#include "dianet/compose.hpp"

namespace dianet {

VerifierNet build_verifier(const LabelledNet& net, ActionId fault,
                           const AlphabetPartition& sigma) {
  if (!sigma.is_fault(fault))
    throw Error("'" + sigma.name(fault) + "' is not a fault");

  VerifierNet v;
  v.base = net;
  LabelledNet reduced = fault_free(net, fault);
  // fault_free keeps names, so replica-2 transitions map back to base ids.
  std::vector<TransId> reduced_to_base;
  for (TransId t = 0; t < reduced.num_transitions(); ++t)
    reduced_to_base.push_back(*net.find_transition(reduced.trans_names[t]));

  v.net.name = "V(" + net.name + "," + sigma.name(fault) + ")";

  std::vector<PlaceId> p1(net.num_places()), p2(reduced.num_places());
  for (PlaceId p = 0; p < net.num_places(); ++p) {
    p1[p] = v.net.add_place(net.place_names[p] + "^1");
    v.place_replica.push_back(Replica::one);
  }
  for (PlaceId p = 0; p < reduced.num_places(); ++p) {
    p2[p] = v.net.add_place(reduced.place_names[p] + "^2");
    v.place_replica.push_back(Replica::two);
  }
  std::vector<PlaceId> init;
  for (PlaceId p : net.initial.places) init.push_back(p1[p]);
  for (PlaceId p : reduced.initial.places) init.push_back(p2[p]);
  v.net.initial = make_marking(std::move(init));

  // One fused transition per pair of equally-labelled observable
  // transitions; the fusion keeps the plain label name.
  for (ActionId a = 0; a < sigma.size(); ++a) {
    if (!sigma.is_observable(a)) continue;
    for (TransId t1 = 0; t1 < net.num_transitions(); ++t1) {
      if (net.label[t1] != a) continue;
      for (TransId t2 = 0; t2 < reduced.num_transitions(); ++t2) {
        if (reduced.label[t2] != a) continue;
        std::vector<PlaceId> preset, postset;
        for (PlaceId p : net.pre[t1]) preset.push_back(p1[p]);
        for (PlaceId p : net.post[t1]) postset.push_back(p1[p]);
        for (PlaceId p : reduced.pre[t2]) preset.push_back(p2[p]);
        for (PlaceId p : reduced.post[t2]) postset.push_back(p2[p]);
        v.net.add_transition(sigma.name(a) + "(" + net.trans_names[t1] +
                                 "," + reduced.trans_names[t2] + ")",
                             a, std::move(preset), std::move(postset));
        v.trans_replica.push_back(Replica::fused);
        v.side1.push_back(t1);
        v.side2.push_back(reduced_to_base[t2]);
      }
    }
  }

  // Unobservable transitions (faults included) stay replica-local.
  for (TransId t = 0; t < net.num_transitions(); ++t) {
    if (sigma.is_observable(net.label[t])) continue;
    std::vector<PlaceId> preset, postset;
    for (PlaceId p : net.pre[t]) preset.push_back(p1[p]);
    for (PlaceId p : net.post[t]) postset.push_back(p1[p]);
    TransId vt = v.net.add_transition(net.trans_names[t] + "^1", net.label[t],
                                      std::move(preset), std::move(postset));
    v.trans_replica.push_back(Replica::one);
    v.side1.push_back(t);
    v.side2.push_back(-1);
    if (net.label[t] == fault) v.fault_events.push_back(vt);
  }
  for (TransId t = 0; t < reduced.num_transitions(); ++t) {
    if (sigma.is_observable(reduced.label[t])) continue;
    std::vector<PlaceId> preset, postset;
    for (PlaceId p : reduced.pre[t]) preset.push_back(p2[p]);
    for (PlaceId p : reduced.post[t]) postset.push_back(p2[p]);
    v.net.add_transition(reduced.trans_names[t] + "^2", reduced.label[t],
                         std::move(preset), std::move(postset));
    v.trans_replica.push_back(Replica::two);
    v.side1.push_back(-1);
    v.side2.push_back(reduced_to_base[t]);
  }
  return v;
}

std::pair<Lasso, Lasso> split_trace(const VerifierNet& v, const Lasso& lasso) {
  if (!replays(v.net, lasso))
    throw InvalidRun("lasso does not replay on the verifier net");
  auto part = [&](const std::vector<TransId>& seq, const std::vector<TransId>&
                                                       side) {
    std::vector<TransId> out;
    for (TransId t : seq) {
      if (t < 0 || t >= v.net.num_transitions())
        throw InvalidRun("lasso uses a transition outside the verifier");
      if (side[t] != -1) out.push_back(side[t]);
    }
    return out;
  };
  Lasso first{part(lasso.stem, v.side1), part(lasso.loop, v.side1)};
  Lasso second{part(lasso.stem, v.side2), part(lasso.loop, v.side2)};
  if (first.loop.empty() || second.loop.empty())
    throw UnobservableCycle(
        "verifier loop moves only one replica; the input has an "
        "unobservable cycle");
  return {first, second};
}

}  // namespace dianet
