#include "dianet/unfolding.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace dianet {

namespace {

// Total order on local configurations: size, then label word, then
// transition word, then Foata levels by transition ids. Comparing words of
// sorted ids keeps the order stable under isomorphic extension, which is
// what cut-off truncation needs.
struct ConfigKey {
  int size = 0;
  std::vector<ActionId> labels;       // sorted
  std::vector<TransId> tids;          // sorted
  std::vector<std::vector<TransId>> foata;  // per depth level, sorted
  auto operator<=>(const ConfigKey&) const = default;
};

struct PossibleExtension {
  ConfigKey key;
  TransId trans;
  std::vector<int> preconds;      // sorted condition ids
  std::vector<int> history;       // sorted event ids (without the new one)
  int depth = 1;

  bool operator<(const PossibleExtension& o) const {
    if (key != o.key) return key < o.key;
    if (trans != o.trans) return trans < o.trans;
    return preconds < o.preconds;
  }
};

struct Builder {
  const LabelledNet& net;
  std::size_t event_limit;
  OccurrenceNet on;
  std::vector<int> event_depth;
  std::vector<bool> frozen;                  // condition descends from cutoff
  std::vector<std::vector<bool>> co;         // condition concurrency
  std::vector<std::vector<int>> by_place;    // place -> condition ids
  std::vector<std::vector<TransId>> consumers;  // place -> transitions
  std::set<PossibleExtension> queue;
  std::set<std::pair<TransId, std::vector<int>>> seen;
  std::map<Marking, ConfigKey> mark_table;

  explicit Builder(const LabelledNet& n, std::size_t limit)
      : net(n), event_limit(limit) {
    on.base = n;
    consumers.resize(n.num_places());
    by_place.resize(n.num_places());
    for (TransId t = 0; t < n.num_transitions(); ++t)
      for (PlaceId p : n.pre[t]) consumers[p].push_back(t);
  }

  bool concurrent(int a, int b) const { return a == b ? false : co[a][b]; }

  int add_condition(PlaceId place, int producer) {
    int id = static_cast<int>(on.conditions.size());
    on.conditions.push_back({place, producer});
    frozen.push_back(false);  // settled once the producer's cutoff is known
    by_place[place].push_back(id);
    for (auto& row : co) row.push_back(false);
    co.emplace_back(on.conditions.size(), false);
    return id;
  }

  void set_co(int a, int b, bool v) { co[a][b] = co[b][a] = v; }

  ConfigKey key_of(const std::vector<int>& history, TransId extra,
                   int extra_depth) const {
    ConfigKey k;
    k.size = static_cast<int>(history.size()) + 1;
    int max_depth = extra_depth;
    for (int e : history) max_depth = std::max(max_depth, event_depth[e]);
    k.foata.resize(max_depth);
    for (int e : history) {
      k.labels.push_back(net.label[on.events[e].trans]);
      k.tids.push_back(on.events[e].trans);
      k.foata[event_depth[e] - 1].push_back(on.events[e].trans);
    }
    k.labels.push_back(net.label[extra]);
    k.tids.push_back(extra);
    k.foata[extra_depth - 1].push_back(extra);
    std::sort(k.labels.begin(), k.labels.end());
    std::sort(k.tids.begin(), k.tids.end());
    for (auto& level : k.foata) std::sort(level.begin(), level.end());
    return k;
  }

  // History and depth of an event with the given preset conditions.
  std::pair<std::vector<int>, int> history_of(
      const std::vector<int>& preconds) const {
    std::vector<int> hist;
    int depth = 1;
    for (int c : preconds) {
      int producer = on.conditions[c].producer;
      if (producer == -1) continue;
      hist.insert(hist.end(), on.events[producer].local_config.begin(),
                  on.events[producer].local_config.end());
      depth = std::max(depth, event_depth[producer] + 1);
    }
    std::sort(hist.begin(), hist.end());
    hist.erase(std::unique(hist.begin(), hist.end()), hist.end());
    return {hist, depth};
  }

  // Enumerate extensions that use condition c.
  void extensions_with(int c) {
    if (frozen[c]) return;
    PlaceId anchor = on.conditions[c].place;
    for (TransId t : consumers[anchor]) {
      std::vector<PlaceId> rest;
      for (PlaceId p : net.pre[t])
        if (p != anchor) rest.push_back(p);
      std::vector<int> chosen{c};
      enumerate(t, rest, 0, chosen);
    }
  }

  void enumerate(TransId t, const std::vector<PlaceId>& rest, std::size_t i,
                 std::vector<int>& chosen) {
    if (i == rest.size()) {
      std::vector<int> preconds = chosen;
      std::sort(preconds.begin(), preconds.end());
      if (!seen.emplace(t, preconds).second) return;
      auto [hist, depth] = history_of(preconds);
      PossibleExtension pe;
      pe.key = key_of(hist, t, depth);
      pe.trans = t;
      pe.preconds = std::move(preconds);
      pe.history = std::move(hist);
      pe.depth = depth;
      queue.insert(std::move(pe));
      return;
    }
    for (int d : by_place[rest[i]]) {
      if (frozen[d]) continue;
      bool ok = true;
      for (int x : chosen) ok &= concurrent(x, d);
      if (!ok) continue;
      chosen.push_back(d);
      enumerate(t, rest, i + 1, chosen);
      chosen.pop_back();
    }
  }

  Marking mark_of_config(const std::vector<int>& config) const {
    std::vector<bool> in_cut(on.conditions.size(), false);
    for (int c = 0; c < static_cast<int>(on.conditions.size()); ++c)
      if (on.conditions[c].producer == -1) in_cut[c] = true;
    for (int e : config)
      for (int c : on.events[e].postset) in_cut[c] = true;
    for (int e : config)
      for (int c : on.events[e].preset) in_cut[c] = false;
    std::vector<PlaceId> places;
    for (int c = 0; c < static_cast<int>(on.conditions.size()); ++c)
      if (in_cut[c]) places.push_back(on.conditions[c].place);
    std::sort(places.begin(), places.end());
    if (std::adjacent_find(places.begin(), places.end()) != places.end())
      throw SafenessViolation("configuration cut marks a place twice in '" +
                              net.name + "'");
    return Marking{std::move(places)};
  }

  void run() {
    // Initial cut.
    std::vector<int> init;
    for (PlaceId p : net.initial.places) init.push_back(add_condition(p, -1));
    for (std::size_t i = 0; i < init.size(); ++i)
      for (std::size_t j = i + 1; j < init.size(); ++j)
        set_co(init[i], init[j], true);
    mark_table.emplace(net.initial, ConfigKey{});
    for (int c : init) extensions_with(c);

    while (!queue.empty()) {
      PossibleExtension pe = *queue.begin();
      queue.erase(queue.begin());
      if (on.events.size() >= event_limit)
        throw ExplorationBudgetExceeded("unfolding exceeded " +
                                        std::to_string(event_limit) +
                                        " events on net '" + net.name + "'");
      int id = static_cast<int>(on.events.size());
      OccurrenceNet::Event ev;
      ev.trans = pe.trans;
      ev.preset = pe.preconds;
      ev.local_config = pe.history;
      ev.local_config.push_back(id);
      on.events.push_back(std::move(ev));
      event_depth.push_back(pe.depth);

      // Postset conditions exist either way; cutoff successors do not.
      std::vector<int> fresh;
      for (PlaceId p : net.post[pe.trans]) fresh.push_back(add_condition(p, id));
      on.events[id].postset = fresh;  // post places are sorted already

      Marking mark = mark_of_config(on.events[id].local_config);
      auto it = mark_table.find(mark);
      if (it != mark_table.end() && it->second < pe.key) {
        on.events[id].cutoff = true;
        for (int c : fresh) frozen[c] = true;
      } else {
        mark_table.try_emplace(mark, pe.key);
      }

      for (std::size_t i = 0; i < fresh.size(); ++i)
        for (std::size_t j = i + 1; j < fresh.size(); ++j)
          set_co(fresh[i], fresh[j], true);
      // A sibling of the new conditions is anything concurrent with the
      // whole preset and not consumed by it.
      for (int c : fresh) {
        for (int d = 0; d < c; ++d) {
          if (on.conditions[d].producer == id) continue;
          bool with_preset = true;
          for (int b : pe.preconds) with_preset &= concurrent(b, d);
          bool consumed = std::binary_search(pe.preconds.begin(),
                                             pe.preconds.end(), d);
          if (with_preset && !consumed) set_co(c, d, true);
        }
      }
      if (!on.events[id].cutoff)
        for (int c : fresh) extensions_with(c);
    }
  }
};

}  // namespace

std::vector<int> OccurrenceNet::cutoffs() const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(events.size()); ++e)
    if (events[e].cutoff) out.push_back(e);
  return out;
}

int OccurrenceNet::num_noncutoff_events() const {
  int n = 0;
  for (const auto& e : events) n += e.cutoff ? 0 : 1;
  return n;
}

Marking OccurrenceNet::mark_of(const std::vector<int>& configuration) const {
  std::vector<bool> in_cut(conditions.size(), false);
  for (int c = 0; c < static_cast<int>(conditions.size()); ++c)
    if (conditions[c].producer == -1) in_cut[c] = true;
  for (int e : configuration)
    for (int c : events[e].postset) in_cut[c] = true;
  for (int e : configuration)
    for (int c : events[e].preset) in_cut[c] = false;
  std::vector<PlaceId> places;
  for (int c = 0; c < static_cast<int>(conditions.size()); ++c)
    if (in_cut[c]) places.push_back(conditions[c].place);
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());
  return Marking{std::move(places)};
}

OccurrenceNet unfold(const LabelledNet& net, std::size_t event_limit) {
  Builder b(net, event_limit);
  b.run();
  return std::move(b.on);
}

bool is_configuration(const OccurrenceNet& on, const Configuration& config) {
  std::set<int> members(config.events.begin(), config.events.end());
  std::set<int> consumed;
  for (int e : config.events) {
    if (e < 0 || e >= static_cast<int>(on.events.size())) return false;
    for (int c : on.events[e].preset) {
      if (!consumed.insert(c).second) return false;  // conflict
      int producer = on.conditions[c].producer;
      if (producer != -1 && !members.count(producer)) return false;
    }
  }
  return true;
}

std::set<Marking> prefix_markings(const OccurrenceNet& on) {
  // BFS over cuts; every reachable cut is the cut of a configuration.
  std::set<Marking> marks;
  std::set<std::vector<int>> visited;
  std::vector<int> init;
  for (int c = 0; c < static_cast<int>(on.conditions.size()); ++c)
    if (on.conditions[c].producer == -1) init.push_back(c);
  std::deque<std::vector<int>> queue{init};
  visited.insert(init);
  while (!queue.empty()) {
    std::vector<int> cut = queue.front();
    queue.pop_front();
    std::vector<PlaceId> places;
    for (int c : cut) places.push_back(on.conditions[c].place);
    marks.insert(make_marking(std::move(places)));
    for (const auto& ev : on.events) {
      bool enabled = true;
      for (int c : ev.preset)
        enabled &= std::binary_search(cut.begin(), cut.end(), c);
      if (!enabled) continue;
      std::vector<int> next;
      std::set_difference(cut.begin(), cut.end(), ev.preset.begin(),
                          ev.preset.end(), std::back_inserter(next));
      next.insert(next.end(), ev.postset.begin(), ev.postset.end());
      std::sort(next.begin(), next.end());
      if (visited.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return marks;
}

bool fault_reachable(const OccurrenceNet& on, ActionId fault) {
  for (const auto& ev : on.events)
    if (on.base.label[ev.trans] == fault) return true;
  return false;
}

}  // namespace dianet
