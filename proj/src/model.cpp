#include "dianet/model.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace dianet {

ActionId AlphabetPartition::add(const std::string& name, bool observable,
                                bool fault) {
  if (name.empty() || name.find_first_of(" \t\r\n") != std::string::npos)
    throw Error("action name must be a non-empty token: '" + name + "'");
  if (index_.count(name))
    throw Error("duplicate action name '" + name + "'");
  ActionId id = static_cast<ActionId>(names_.size());
  names_.push_back(name);
  observable_.push_back(observable);
  fault_.push_back(fault);
  index_[name] = id;
  return id;
}

ActionId AlphabetPartition::add_observable(const std::string& name) {
  return add(name, true, false);
}

ActionId AlphabetPartition::add_unobservable(const std::string& name,
                                             bool fault) {
  return add(name, false, fault);
}

const std::string& AlphabetPartition::name(ActionId a) const {
  if (a < 0 || a >= size()) throw UnknownAction("unknown action id");
  return names_[a];
}

bool AlphabetPartition::is_observable(ActionId a) const {
  if (a < 0 || a >= size()) throw UnknownAction("unknown action id");
  return observable_[a];
}

bool AlphabetPartition::is_fault(ActionId a) const {
  if (a < 0 || a >= size()) throw UnknownAction("unknown action id");
  return fault_[a];
}

std::optional<ActionId> AlphabetPartition::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ActionId AlphabetPartition::require(const std::string& name) const {
  auto id = find(name);
  if (!id) throw UnknownAction("unknown action '" + name + "'");
  return *id;
}

std::vector<ActionId> AlphabetPartition::faults() const {
  std::vector<ActionId> out;
  for (ActionId a = 0; a < size(); ++a)
    if (fault_[a]) out.push_back(a);
  return out;
}

std::vector<ActionId> AlphabetPartition::observables() const {
  std::vector<ActionId> out;
  for (ActionId a = 0; a < size(); ++a)
    if (observable_[a]) out.push_back(a);
  return out;
}

std::vector<int> AlphabetPartition::name_ranks() const {
  std::vector<int> order(names_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return names_[a] < names_[b]; });
  std::vector<int> rank(names_.size());
  for (int i = 0; i < static_cast<int>(order.size()); ++i) rank[order[i]] = i;
  return rank;
}

StateId Automaton::add_state(const std::string& state_name) {
  states.push_back(state_name);
  return static_cast<StateId>(states.size()) - 1;
}

void Automaton::add_transition(StateId src, ActionId action, StateId dst) {
  transitions.push_back({src, action, dst});
}

std::vector<ActionId> Automaton::alphabet() const {
  std::set<ActionId> used;
  for (const auto& t : transitions) used.insert(t.action);
  return {used.begin(), used.end()};
}

bool Marking::contains(PlaceId p) const {
  return std::binary_search(places.begin(), places.end(), p);
}

Marking make_marking(std::vector<PlaceId> places) {
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());
  return Marking{std::move(places)};
}

PlaceId LabelledNet::add_place(const std::string& place_name) {
  place_names.push_back(place_name);
  return static_cast<PlaceId>(place_names.size()) - 1;
}

TransId LabelledNet::add_transition(const std::string& trans_name,
                                    ActionId action,
                                    std::vector<PlaceId> preset,
                                    std::vector<PlaceId> postset) {
  std::sort(preset.begin(), preset.end());
  preset.erase(std::unique(preset.begin(), preset.end()), preset.end());
  std::sort(postset.begin(), postset.end());
  postset.erase(std::unique(postset.begin(), postset.end()), postset.end());
  if (preset.empty() || postset.empty())
    throw Error("transition '" + trans_name +
                "' must have non-empty preset and postset");
  trans_names.push_back(trans_name);
  label.push_back(action);
  pre.push_back(std::move(preset));
  post.push_back(std::move(postset));
  return static_cast<TransId>(trans_names.size()) - 1;
}

std::optional<TransId> LabelledNet::find_transition(
    const std::string& trans_name) const {
  for (TransId t = 0; t < num_transitions(); ++t)
    if (trans_names[t] == trans_name) return t;
  return std::nullopt;
}

std::vector<ActionId> LabelledNet::used_actions() const {
  std::set<ActionId> used(label.begin(), label.end());
  return {used.begin(), used.end()};
}

bool is_enabled(const LabelledNet& net, const Marking& m, TransId t) {
  for (PlaceId p : net.pre[t])
    if (!m.contains(p)) return false;
  return true;
}

std::vector<TransId> enabled(const LabelledNet& net, const Marking& m) {
  std::vector<TransId> out;
  for (TransId t = 0; t < net.num_transitions(); ++t)
    if (is_enabled(net, m, t)) out.push_back(t);
  return out;
}

Marking fire(const LabelledNet& net, const Marking& m, TransId t) {
  if (t < 0 || t >= net.num_transitions())
    throw NotEnabled("no such transition");
  if (!is_enabled(net, m, t))
    throw NotEnabled("transition '" + net.trans_names[t] +
                     "' is not enabled");
  std::vector<PlaceId> rest;
  rest.reserve(m.places.size());
  std::set_difference(m.places.begin(), m.places.end(), net.pre[t].begin(),
                      net.pre[t].end(), std::back_inserter(rest));
  // A token produced into a place that still holds one breaks safeness.
  for (PlaceId p : net.post[t])
    if (std::binary_search(rest.begin(), rest.end(), p))
      throw SafenessViolation("firing '" + net.trans_names[t] +
                              "' puts a second token on '" +
                              net.place_names[p] + "'");
  std::vector<PlaceId> next;
  next.reserve(rest.size() + net.post[t].size());
  std::set_union(rest.begin(), rest.end(), net.post[t].begin(),
                 net.post[t].end(), std::back_inserter(next));
  return Marking{std::move(next)};
}

int ReachGraph::find(const Marking& m) const {
  auto it = index.find(m);
  return it == index.end() ? -1 : it->second;
}

ReachGraph reachability_graph(const LabelledNet& net, std::size_t node_limit) {
  ReachGraph g;
  g.nodes.push_back(net.initial);
  g.index[net.initial] = 0;
  g.out.emplace_back();
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int n = queue.front();
    queue.pop_front();
    Marking m = g.nodes[n];  // copy: g.nodes may reallocate below
    for (TransId t : enabled(net, m)) {
      Marking next = fire(net, m, t);
      auto [it, inserted] = g.index.try_emplace(next, g.nodes.size());
      if (inserted) {
        if (g.nodes.size() >= node_limit)
          throw ExplorationBudgetExceeded(
              "reachability exploration exceeded " +
              std::to_string(node_limit) + " markings on net '" + net.name +
              "'");
        g.nodes.push_back(next);
        g.out.emplace_back();
        queue.push_back(it->second);
      }
      g.out[n].push_back(static_cast<int>(g.edges.size()));
      g.edges.push_back({n, t, it->second});
    }
  }
  return g;
}

bool replays(const LabelledNet& net, const Lasso& lasso) {
  if (lasso.loop.empty()) return false;
  Marking m = net.initial;
  try {
    for (TransId t : lasso.stem) m = fire(net, m, t);
    Marking entry = m;
    for (TransId t : lasso.loop) m = fire(net, m, t);
    return m == entry;
  } catch (const Error&) {
    return false;
  }
}

Marking stem_end(const LabelledNet& net, const Lasso& lasso) {
  Marking m = net.initial;
  for (TransId t : lasso.stem) m = fire(net, m, t);
  return m;
}

TraceLasso to_trace(const LabelledNet& net, const Lasso& lasso) {
  TraceLasso out;
  for (TransId t : lasso.stem) out.stem.push_back(net.label[t]);
  for (TransId t : lasso.loop) out.loop.push_back(net.label[t]);
  return out;
}

std::vector<ActionId> obs_projection(const std::vector<ActionId>& trace,
                                     const AlphabetPartition& sigma) {
  std::vector<ActionId> out;
  for (ActionId a : trace)
    if (sigma.is_observable(a)) out.push_back(a);
  return out;
}

TraceLasso obs_projection(const TraceLasso& trace,
                          const AlphabetPartition& sigma) {
  TraceLasso out;
  out.stem = obs_projection(trace.stem, sigma);
  out.loop = obs_projection(trace.loop, sigma);
  if (!trace.loop.empty() && out.loop.empty())
    throw UnobservableCycle(
        "lasso loop contains only unobservable actions; its observable "
        "projection is not an infinite trace");
  return out;
}

AssumptionReport validate_assumptions(const Automaton& a,
                                      const AlphabetPartition& sigma) {
  AssumptionReport report;
  int n = static_cast<int>(a.states.size());

  std::vector<std::vector<int>> out(n);
  for (const auto& t : a.transitions) out[t.src].push_back(t.dst);

  // Assumption 1: every reachable state has at least one outgoing transition.
  std::vector<bool> reachable(n, false);
  std::deque<StateId> queue{a.initial};
  reachable[a.initial] = true;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (StateId d : out[s])
      if (!reachable[d]) {
        reachable[d] = true;
        queue.push_back(d);
      }
  }
  for (StateId s = 0; s < n; ++s)
    if (reachable[s] && out[s].empty())
      report.violations.push_back(
          {1, "component '" + a.name + "': state '" + a.states[s] +
                  "' is reachable and has no outgoing transition"});

  // Assumption 2: the unobservable-labelled subgraph is acyclic.
  std::vector<std::vector<int>> uout(n);
  for (const auto& t : a.transitions)
    if (!sigma.is_observable(t.action)) uout[t.src].push_back(t.dst);
  std::vector<int> color(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::pair<int, std::size_t>> stack;
  for (StateId root = 0; root < n; ++root) {
    if (color[root] != 0) continue;
    stack.emplace_back(root, 0);
    color[root] = 1;
    bool cycle = false;
    while (!stack.empty() && !cycle) {
      auto& [s, i] = stack.back();
      if (i < uout[s].size()) {
        StateId d = uout[s][i++];
        if (color[d] == 1) {
          cycle = true;
          report.violations.push_back(
              {2, "component '" + a.name +
                      "': cycle of unobservable actions through state '" +
                      a.states[d] + "'"});
        } else if (color[d] == 0) {
          color[d] = 1;
          stack.emplace_back(d, 0);
        }
      } else {
        color[s] = 2;
        stack.pop_back();
      }
    }
    while (!stack.empty()) {
      color[stack.back().first] = 2;
      stack.pop_back();
    }
  }
  return report;
}

}  // namespace dianet
