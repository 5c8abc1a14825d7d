#include "dianet/compose.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dianet {

LabelledNet automaton_to_net(const Automaton& a) {
  LabelledNet net;
  net.name = a.name;
  for (const auto& s : a.states) net.add_place(a.name + "." + s);
  int k = 0;
  for (const auto& t : a.transitions) {
    net.add_transition(a.name + ".t" + std::to_string(++k), t.action, {t.src},
                       {t.dst});
  }
  net.initial = make_marking({a.initial});
  return net;
}

ProductNet product(const std::vector<LabelledNet>& nets,
                   const std::vector<std::vector<ActionId>>& alphabets,
                   const AlphabetPartition& sigma) {
  if (nets.empty() || nets.size() != alphabets.size())
    throw Error("product needs one alphabet per net");
  int n = static_cast<int>(nets.size());

  // Who shares which label. Sharing is decided by the declared alphabets,
  // not by the transitions a (possibly reduced) net still has.
  std::vector<std::vector<int>> sharers(sigma.size());
  for (int i = 0; i < n; ++i)
    for (ActionId a : alphabets[i]) sharers[a].push_back(i);
  for (ActionId a = 0; a < sigma.size(); ++a) {
    if (sharers[a].size() >= 2 && !sigma.is_observable(a) && !sigma.is_fault(a))
      throw SharedUnobservable("unobservable non-fault action '" +
                               sigma.name(a) +
                               "' is shared between components");
  }

  ProductNet pn;
  std::vector<int> place_base(n);
  if (n == 1) {
    // Identity: a single net composes to itself.
    pn.net = nets[0];
    pn.component_of_place.assign(pn.net.num_places(), 0);
    for (TransId t = 0; t < pn.net.num_transitions(); ++t)
      pn.origin.push_back({{0, t}});
    return pn;
  }

  std::string joined;
  for (int i = 0; i < n; ++i) {
    joined += (i ? "×" : "") + nets[i].name;
    place_base[i] = pn.net.num_places();
    for (const auto& p : nets[i].place_names) {
      pn.net.add_place(p);
      pn.component_of_place.push_back(i);
    }
  }
  pn.net.name = joined;

  std::vector<PlaceId> init;
  for (int i = 0; i < n; ++i)
    for (PlaceId p : nets[i].initial.places) init.push_back(place_base[i] + p);
  pn.net.initial = make_marking(std::move(init));

  // Fused transitions first, in label order, one per tuple over the sharing
  // components' a-labelled transitions.
  std::vector<std::vector<bool>> fused_away(n);
  for (int i = 0; i < n; ++i)
    fused_away[i].assign(nets[i].num_transitions(), false);

  for (ActionId a = 0; a < sigma.size(); ++a) {
    if (sharers[a].size() < 2 || !sigma.is_observable(a)) continue;
    std::vector<std::vector<TransId>> candidates;
    for (int i : sharers[a]) {
      std::vector<TransId> ts;
      for (TransId t = 0; t < nets[i].num_transitions(); ++t)
        if (nets[i].label[t] == a) {
          ts.push_back(t);
          fused_away[i][t] = true;
        }
      candidates.push_back(std::move(ts));
    }
    bool any_empty = false;
    for (const auto& ts : candidates) any_empty |= ts.empty();
    if (any_empty) continue;  // a sharer lost its a-transitions: no fusion

    std::vector<std::size_t> pick(candidates.size(), 0);
    while (true) {
      std::vector<PlaceId> preset, postset;
      std::string name;
      std::vector<TransOrigin> origin;
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        int i = sharers[a][k];
        TransId t = candidates[k][pick[k]];
        for (PlaceId p : nets[i].pre[t]) preset.push_back(place_base[i] + p);
        for (PlaceId p : nets[i].post[t]) postset.push_back(place_base[i] + p);
        name += (k ? "×" : "") + nets[i].trans_names[t];
        origin.push_back({i, t});
      }
      pn.net.add_transition(name, a, std::move(preset), std::move(postset));
      pn.origin.push_back(std::move(origin));

      std::size_t k = candidates.size();
      while (k > 0) {
        if (++pick[k - 1] < candidates[k - 1].size()) break;
        pick[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
  }

  // Everything not fused away is copied verbatim.
  for (int i = 0; i < n; ++i) {
    for (TransId t = 0; t < nets[i].num_transitions(); ++t) {
      if (fused_away[i][t]) continue;
      std::vector<PlaceId> preset, postset;
      for (PlaceId p : nets[i].pre[t]) preset.push_back(place_base[i] + p);
      for (PlaceId p : nets[i].post[t]) postset.push_back(place_base[i] + p);
      pn.net.add_transition(nets[i].trans_names[t], nets[i].label[t],
                            std::move(preset), std::move(postset));
      pn.origin.push_back({{i, t}});
    }
  }
  return pn;
}

ProductNet prune_unreachable(const ProductNet& pn, std::size_t node_limit) {
  ReachGraph g = reachability_graph(pn.net, node_limit);
  int v = static_cast<int>(g.nodes.size());

  // A node lies on a cycle iff it has an edge back to itself through the
  // graph; detect via Tarjan SCCs (self-loops included).
  std::vector<int> comp(v, -1), low(v, 0), num(v, -1);
  std::vector<bool> on_stack(v, false), cyclic(v, false);
  {
    int counter = 0, ncomp = 0;
    std::vector<int> stack;
    std::vector<std::pair<int, std::size_t>> call;
    for (int root = 0; root < v; ++root) {
      if (num[root] != -1) continue;
      call.emplace_back(root, 0);
      num[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!call.empty()) {
        auto& [u, i] = call.back();
        if (i < g.out[u].size()) {
          int w = g.edges[g.out[u][i++]].dst;
          if (num[w] == -1) {
            num[w] = low[w] = counter++;
            stack.push_back(w);
            on_stack[w] = true;
            call.emplace_back(w, 0);
          } else if (on_stack[w]) {
            low[u] = std::min(low[u], num[w]);
          }
        } else {
          if (low[u] == num[u]) {
            std::vector<int> members;
            while (true) {
              int w = stack.back();
              stack.pop_back();
              on_stack[w] = false;
              comp[w] = ncomp;
              members.push_back(w);
              if (w == u) break;
            }
            if (members.size() > 1)
              for (int w : members) cyclic[w] = true;
            ++ncomp;
          }
          call.pop_back();
          if (!call.empty())
            low[call.back().first] =
                std::min(low[call.back().first], low[u]);
        }
      }
    }
    // Single-node SCCs with a self-edge are cyclic too.
    for (const auto& e : g.edges)
      if (e.src == e.dst) cyclic[e.src] = true;
  }

  // can_loop[n]: some cycle is reachable from n.
  std::vector<bool> can_loop(v, false);
  {
    std::vector<std::vector<int>> rin(v);
    for (const auto& e : g.edges) rin[e.dst].push_back(e.src);
    std::vector<int> queue;
    for (int i = 0; i < v; ++i)
      if (cyclic[i]) {
        can_loop[i] = true;
        queue.push_back(i);
      }
    while (!queue.empty()) {
      int u = queue.back();
      queue.pop_back();
      for (int w : rin[u])
        if (!can_loop[w]) {
          can_loop[w] = true;
          queue.push_back(w);
        }
    }
  }

  std::vector<bool> keep_trans(pn.net.num_transitions(), false);
  for (const auto& e : g.edges)
    if (can_loop[e.dst]) keep_trans[e.trans] = true;

  std::vector<bool> keep_place(pn.net.num_places(), false);
  bool any_trans = false;
  for (TransId t = 0; t < pn.net.num_transitions(); ++t) {
    if (!keep_trans[t]) continue;
    any_trans = true;
    for (PlaceId p : pn.net.pre[t]) keep_place[p] = true;
    for (PlaceId p : pn.net.post[t]) keep_place[p] = true;
  }
  if (!any_trans)
    for (PlaceId p : pn.net.initial.places) keep_place[p] = true;

  ProductNet out;
  out.net.name = pn.net.name;
  std::vector<PlaceId> place_map(pn.net.num_places(), -1);
  for (PlaceId p = 0; p < pn.net.num_places(); ++p) {
    if (!keep_place[p]) continue;
    place_map[p] = out.net.add_place(pn.net.place_names[p]);
    out.component_of_place.push_back(pn.component_of_place[p]);
  }
  std::vector<PlaceId> init;
  for (PlaceId p : pn.net.initial.places)
    if (place_map[p] != -1) init.push_back(place_map[p]);
  out.net.initial = make_marking(std::move(init));
  for (TransId t = 0; t < pn.net.num_transitions(); ++t) {
    if (!keep_trans[t]) continue;
    std::vector<PlaceId> preset, postset;
    for (PlaceId p : pn.net.pre[t]) preset.push_back(place_map[p]);
    for (PlaceId p : pn.net.post[t]) postset.push_back(place_map[p]);
    out.net.add_transition(pn.net.trans_names[t], pn.net.label[t],
                           std::move(preset), std::move(postset));
    out.origin.push_back(pn.origin[t]);
  }
  return out;
}

LabelledNet fault_free(const LabelledNet& net, ActionId fault) {
  std::vector<bool> in_closure(net.num_places(), false);
  for (PlaceId p : net.initial.places) in_closure[p] = true;
  std::vector<bool> taken(net.num_transitions(), false);

  // Least fixpoint; a scan order cannot change it.
  bool changed = true;
  while (changed) {
    changed = false;
    for (TransId t = 0; t < net.num_transitions(); ++t) {
      if (taken[t] || net.label[t] == fault) continue;
      bool covered = true;
      for (PlaceId p : net.pre[t]) covered &= in_closure[p];
      if (!covered) continue;
      taken[t] = true;
      changed = true;
      for (PlaceId p : net.post[t])
        if (!in_closure[p]) in_closure[p] = true;
    }
  }

  LabelledNet out;
  out.name = net.name + "^f";
  std::vector<PlaceId> place_map(net.num_places(), -1);
  for (PlaceId p = 0; p < net.num_places(); ++p)
    if (in_closure[p]) place_map[p] = out.add_place(net.place_names[p]);
  std::vector<PlaceId> init;
  for (PlaceId p : net.initial.places) init.push_back(place_map[p]);
  out.initial = make_marking(std::move(init));
  for (TransId t = 0; t < net.num_transitions(); ++t) {
    if (!taken[t]) continue;
    std::vector<PlaceId> preset, postset;
    for (PlaceId p : net.pre[t]) preset.push_back(place_map[p]);
    for (PlaceId p : net.post[t]) postset.push_back(place_map[p]);
    out.add_transition(net.trans_names[t], net.label[t], std::move(preset),
                       std::move(postset));
  }
  return out;
}

ProductNet component_view(const SystemSpec& spec, int i, ActionId fault) {
  int n = static_cast<int>(spec.components.size());
  if (i < 0 || i >= n) throw Error("component index out of range");
  if (!spec.sigma.is_fault(fault))
    throw Error("'" + spec.sigma.name(fault) + "' is not a fault");
  std::vector<LabelledNet> nets;
  std::vector<std::vector<ActionId>> alphabets;
  for (int j = 0; j < n; ++j) {
    LabelledNet net = automaton_to_net(spec.components[j]);
    nets.push_back(j == i ? net : fault_free(net, fault));
    alphabets.push_back(spec.components[j].alphabet());
  }
  ProductNet pn = product(nets, alphabets, spec.sigma);
  if (n > 1)
    pn.net.name = spec.name + "^" + spec.components[i].name + "(" +
                  spec.sigma.name(fault) + ")";
  return pn;
}

ProductNet system_product(const SystemSpec& spec) {
  std::vector<LabelledNet> nets;
  std::vector<std::vector<ActionId>> alphabets;
  for (const auto& c : spec.components) {
    nets.push_back(automaton_to_net(c));
    alphabets.push_back(c.alphabet());
  }
  ProductNet pn = product(nets, alphabets, spec.sigma);
  pn.net.name = spec.name;
  return pn;
}

namespace {

// Does component i take part in product transition t?
bool moves_component(const ProductNet& pn, TransId t, int i) {
  for (const auto& o : pn.origin[t])
    if (o.component == i) return true;
  return false;
}

}  // namespace

std::vector<ActionId> project_run(const ProductNet& pn,
                                  const std::vector<TransId>& run, int i) {
  std::vector<ActionId> out;
  for (TransId t : run) {
    if (t < 0 || t >= pn.net.num_transitions())
      throw InvalidRun("run uses a transition outside the net");
    if (moves_component(pn, t, i)) out.push_back(pn.net.label[t]);
  }
  return out;
}

ProjectedTrace project_run(const ProductNet& pn, const Lasso& run, int i) {
  if (!replays(pn.net, run))
    throw InvalidRun("lasso does not replay on the product net");
  ProjectedTrace out;
  out.stem = project_run(pn, run.stem, i);
  out.loop = project_run(pn, run.loop, i);
  return out;
}

}  // namespace dianet
