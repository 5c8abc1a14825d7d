#include "dianet/analysis.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <deque>
#include <limits>
#include <map>

#include "dianet/compose.hpp"

namespace dianet {

std::string to_string(Status s) {
  switch (s) {
    case Status::diagnosable: return "diagnosable";
    case Status::non_diagnosable: return "non_diagnosable";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::global: return "global";
    case Method::distributed_thm1: return "distributed:thm1";
    case Method::distributed_thm2: return "distributed:thm2";
  }
  return "?";
}

namespace detail {
namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

struct SccInfo {
  std::vector<int> comp;
  std::vector<bool> cyclic;  // SCC of size > 1, or self-edge
};

SccInfo scc_decompose(const SearchGraph& g) {
  int v = g.num_nodes;
  SccInfo info;
  info.comp.assign(v, -1);
  info.cyclic.assign(v, false);
  std::vector<int> num(v, -1), low(v, 0);
  std::vector<bool> on_stack(v, false);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> call;
  int counter = 0, ncomp = 0;
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
            info.comp[w] = ncomp;
            members.push_back(w);
            if (w == u) break;
          }
          if (members.size() > 1)
            for (int w : members) info.cyclic[w] = true;
          ++ncomp;
        }
        call.pop_back();
        if (!call.empty())
          low[call.back().first] = std::min(low[call.back().first], low[u]);
      }
    }
  }
  for (const auto& e : g.edges)
    if (e.src == e.dst) info.cyclic[e.src] = true;
  return info;
}

// dist[n][flag]: fewest steps from the root to n, flag = fault edge seen.
std::vector<std::array<int, 2>> fault_bfs(const SearchGraph& g) {
  std::vector<std::array<int, 2>> dist(g.num_nodes, {kInf, kInf});
  std::deque<std::pair<int, int>> queue;
  dist[0][0] = 0;
  queue.emplace_back(0, 0);
  while (!queue.empty()) {
    auto [n, flag] = queue.front();
    queue.pop_front();
    int d = dist[n][flag];
    for (int ei : g.out[n]) {
      const auto& e = g.edges[ei];
      int nf = flag | (e.fault ? 1 : 0);
      if (dist[e.dst][nf] > d + 1) {
        dist[e.dst][nf] = d + 1;
        queue.emplace_back(e.dst, nf);
      }
    }
  }
  return dist;
}

// Shortest closed walks from x back to x: {any, containing a fault edge}.
// Closed walks never leave x's SCC.
std::array<int, 2> min_cycles(const SearchGraph& g, const SccInfo& scc,
                              int x) {
  std::map<std::pair<int, int>, int> dist;
  std::deque<std::pair<int, int>> queue;
  dist[{x, 0}] = 0;
  queue.emplace_back(x, 0);
  std::array<int, 2> best = {kInf, kInf};
  while (!queue.empty()) {
    auto [n, flag] = queue.front();
    queue.pop_front();
    int d = dist[{n, flag}];
    for (int ei : g.out[n]) {
      const auto& e = g.edges[ei];
      if (scc.comp[e.dst] != scc.comp[x]) continue;
      int nf = flag | (e.fault ? 1 : 0);
      if (e.dst == x) {
        best[0] = std::min(best[0], d + 1);
        if (nf) {
          best[1] = std::min(best[1], d + 1);
          continue;  // closing with the fault seen cannot be improved on
        }
      }
      auto [it, inserted] = dist.try_emplace({e.dst, nf}, d + 1);
      if (inserted) queue.emplace_back(e.dst, nf);
    }
  }
  return best;
}

// feas[j][n][need]: a walk of exactly j steps from n to `target` exists that
// passes a fault edge whenever `need` is set.
using Feasible = std::vector<std::vector<std::array<bool, 2>>>;

Feasible backward_feasible(const SearchGraph& g, int target, int len) {
  Feasible f(len + 1,
             std::vector<std::array<bool, 2>>(g.num_nodes, {false, false}));
  f[0][target][0] = true;
  for (int j = 1; j <= len; ++j) {
    for (const auto& e : g.edges) {
      for (int need = 0; need < 2; ++need) {
        int rest = e.fault ? 0 : need;
        if (f[j - 1][e.dst][rest]) f[j][e.src][need] = true;
      }
    }
  }
  return f;
}

// Lexicographically least label word (by name rank) over all walks of
// exactly `len` steps from `start` to the table's target.
std::optional<std::vector<ActionId>> lex_least_labels(
    const SearchGraph& g, const Feasible& feas,
    const std::vector<int>& label_rank, int start, int need, int len) {
  if (!feas[len][start][need]) return std::nullopt;
  std::vector<ActionId> word;
  std::vector<std::pair<int, int>> frontier{{start, need}};
  for (int j = len; j > 0; --j) {
    ActionId best = -1;
    for (auto [n, nd] : frontier) {
      for (int ei : g.out[n]) {
        const auto& e = g.edges[ei];
        int rest = e.fault ? 0 : nd;
        if (!feas[j - 1][e.dst][rest]) continue;
        if (best == -1 || label_rank[e.label] < label_rank[best])
          best = e.label;
      }
    }
    if (best == -1) return std::nullopt;
    std::vector<std::pair<int, int>> next;
    for (auto [n, nd] : frontier) {
      for (int ei : g.out[n]) {
        const auto& e = g.edges[ei];
        if (e.label != best) continue;
        int rest = e.fault ? 0 : nd;
        if (!feas[j - 1][e.dst][rest]) continue;
        next.emplace_back(e.dst, rest);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
    word.push_back(best);
  }
  return word;
}

// Lexicographically least edge-key walk realizing a fixed label word from
// `start` to `target`. Edge keys are unique per source node, so the walk is
// a single deterministic path.
std::vector<int> lex_least_edges(const SearchGraph& g,
                                 const std::vector<ActionId>& word, int start,
                                 int need, int target) {
  int len = static_cast<int>(word.size());
  // Word-constrained feasibility: wf[j][n][need] = word[j..] realizable.
  std::vector<std::vector<std::array<bool, 2>>> wf(
      len + 1,
      std::vector<std::array<bool, 2>>(g.num_nodes, {false, false}));
  wf[len][target][0] = true;
  for (int j = len - 1; j >= 0; --j) {
    for (const auto& e : g.edges) {
      if (e.label != word[j]) continue;
      for (int nd = 0; nd < 2; ++nd) {
        int rest = e.fault ? 0 : nd;
        if (wf[j + 1][e.dst][rest]) wf[j][e.src][nd] = true;
      }
    }
  }
  std::vector<int> walk;
  int node = start, nd = need;
  for (int j = 0; j < len; ++j) {
    int pick = -1;
    for (int ei : g.out[node]) {
      const auto& e = g.edges[ei];
      if (e.label != word[j]) continue;
      int rest = e.fault ? 0 : nd;
      if (!wf[j + 1][e.dst][rest]) continue;
      if (pick == -1 || e.key < g.edges[pick].key) pick = ei;
    }
    if (pick == -1)
      throw Error("internal: witness extraction lost feasibility");
    walk.push_back(pick);
    node = g.edges[pick].dst;
    nd = g.edges[pick].fault ? 0 : nd;
  }
  return walk;
}

std::vector<long long> edge_keys(const SearchGraph& g,
                                 const std::vector<int>& edges) {
  std::vector<long long> out;
  out.reserve(edges.size());
  for (int ei : edges) out.push_back(g.edges[ei].key);
  return out;
}

bool rank_less(const std::vector<ActionId>& a, const std::vector<ActionId>& b,
               const std::vector<int>& label_rank) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [&](ActionId x, ActionId y) { return label_rank[x] < label_rank[y]; });
}

}  // namespace

LassoSearchResult find_min_fault_lasso(const SearchGraph& g,
                                       const std::vector<int>& label_rank) {
  LassoSearchResult result;
  if (g.num_nodes == 0) return result;
  SccInfo scc = scc_decompose(g);
  auto dist = fault_bfs(g);
  for (int n = 0; n < g.num_nodes; ++n)
    if (scc.cyclic[n] && (dist[n][0] < kInf || dist[n][1] < kInf))
      result.any_infinite_run = true;
  bool any_fault = false;
  for (const auto& e : g.edges) any_fault |= e.fault;
  if (!any_fault || !result.any_infinite_run) return result;

  // Phase 1: minimal stem+loop length of a lasso containing a fault edge.
  std::vector<std::array<int, 2>> cyc(g.num_nodes, {kInf, kInf});
  int best_len = kInf;
  for (int x = 0; x < g.num_nodes; ++x) {
    if (!scc.cyclic[x]) continue;
    if (dist[x][0] >= kInf && dist[x][1] >= kInf) continue;
    cyc[x] = min_cycles(g, scc, x);
    if (dist[x][1] < kInf && cyc[x][0] < kInf)
      best_len = std::min(best_len, dist[x][1] + cyc[x][0]);
    if (dist[x][0] < kInf && cyc[x][1] < kInf)
      best_len = std::min(best_len, dist[x][0] + cyc[x][1]);
  }
  if (best_len >= kInf) return result;

  // Phase 2: among lassos of that length, least (loop word, stem word),
  // comparing labels by name; remaining ties fall to canonical edge keys.
  struct Candidate {
    int x;
    int stem_len, loop_len;
    int stem_need, loop_need;
    std::vector<ActionId> loop_labels, stem_labels;
  };
  std::vector<Candidate> cands;
  for (int x = 0; x < g.num_nodes; ++x) {
    if (!scc.cyclic[x]) continue;
    if (dist[x][0] >= kInf && dist[x][1] >= kInf) continue;
    for (int loop_len = 1; loop_len <= best_len; ++loop_len) {
      int stem_len = best_len - loop_len;
      for (int loop_need = 0; loop_need < 2; ++loop_need) {
        int stem_need = loop_need ? 0 : 1;
        if (dist[x][stem_need] > stem_len) continue;
        if (cyc[x][loop_need] > loop_len) continue;
        Feasible lf = backward_feasible(g, x, loop_len);
        auto loop_word =
            lex_least_labels(g, lf, label_rank, x, loop_need, loop_len);
        if (!loop_word) continue;
        Feasible sf = backward_feasible(g, x, stem_len);
        auto stem_word =
            lex_least_labels(g, sf, label_rank, 0, stem_need, stem_len);
        if (!stem_word) continue;
        cands.push_back({x, stem_len, loop_len, stem_need, loop_need,
                         std::move(*loop_word), std::move(*stem_word)});
      }
    }
  }
  if (cands.empty()) return result;  // cannot happen once best_len is finite

  const Candidate* best_cand = &cands[0];
  for (const auto& c : cands) {
    if (rank_less(c.loop_labels, best_cand->loop_labels, label_rank) ||
        (c.loop_labels == best_cand->loop_labels &&
         rank_less(c.stem_labels, best_cand->stem_labels, label_rank)))
      best_cand = &c;
  }

  EdgeLasso best;
  std::vector<long long> best_lk, best_sk;
  bool have = false;
  for (const auto& c : cands) {
    if (c.loop_labels != best_cand->loop_labels ||
        c.stem_labels != best_cand->stem_labels)
      continue;
    std::vector<int> stem =
        lex_least_edges(g, c.stem_labels, 0, c.stem_need, c.x);
    std::vector<int> loop =
        lex_least_edges(g, c.loop_labels, c.x, c.loop_need, c.x);
    auto lk = edge_keys(g, loop);
    auto sk = edge_keys(g, stem);
    if (!have || lk < best_lk || (lk == best_lk && sk < best_sk)) {
      best = {std::move(stem), std::move(loop)};
      best_lk = std::move(lk);
      best_sk = std::move(sk);
      have = true;
    }
  }
  result.lasso = std::move(best);
  return result;
}

}  // namespace detail

namespace {

detail::SearchGraph verifier_search_graph(const VerifierNet& v,
                                          const ReachGraph& g) {
  detail::SearchGraph sg;
  sg.num_nodes = static_cast<int>(g.nodes.size());
  sg.out.resize(sg.num_nodes);
  std::vector<bool> is_fault(v.net.num_transitions(), false);
  for (TransId t : v.fault_events) is_fault[t] = true;
  for (const auto& e : g.edges) {
    sg.out[e.src].push_back(static_cast<int>(sg.edges.size()));
    sg.edges.push_back(
        {e.src, e.dst, v.net.label[e.trans], is_fault[e.trans], e.trans});
  }
  return sg;
}

Lasso edges_to_lasso(const detail::SearchGraph& sg,
                     const detail::EdgeLasso& el) {
  Lasso out;
  for (int ei : el.stem) out.stem.push_back(static_cast<TransId>(sg.edges[ei].key));
  for (int ei : el.loop) out.loop.push_back(static_cast<TransId>(sg.edges[ei].key));
  return out;
}

}  // namespace

std::optional<Lasso> check_eventually_fault(const VerifierNet& v,
                                            const AlphabetPartition& sigma,
                                            std::size_t node_limit) {
  if (v.fault_events.empty()) return std::nullopt;
  ReachGraph g = reachability_graph(v.net, node_limit);
  detail::SearchGraph sg = verifier_search_graph(v, g);
  auto found = detail::find_min_fault_lasso(sg, sigma.name_ranks());
  if (!found.lasso) return std::nullopt;
  return edges_to_lasso(sg, *found.lasso);
}

Verdict is_diagnosable(const LabelledNet& net, ActionId fault,
                       const AlphabetPartition& sigma,
                       std::size_t node_limit) {
  auto t0 = std::chrono::steady_clock::now();
  Verdict verdict;
  verdict.fault = fault;
  verdict.method = Method::global;
  VerifierNet v = build_verifier(net, fault, sigma);
  if (v.fault_events.empty()) {
    // The fault cannot occur at all; nothing to detect.
    verdict.status = Status::diagnosable;
  } else {
    ReachGraph g = reachability_graph(v.net, node_limit);
    verdict.markings_explored = g.nodes.size();
    detail::SearchGraph sg = verifier_search_graph(v, g);
    auto found = detail::find_min_fault_lasso(sg, sigma.name_ranks());
    if (found.lasso) {
      Lasso vl = edges_to_lasso(sg, *found.lasso);
      auto [faulty, clean] = split_trace(v, vl);
      Witness w;
      w.faulty_trace = to_trace(net, faulty);
      w.fault_free_trace = to_trace(net, clean);
      w.observation = obs_projection(w.faulty_trace, sigma);
      w.faulty = std::move(faulty);
      w.fault_free = std::move(clean);
      verdict.witness = std::move(w);
      verdict.status = Status::non_diagnosable;
    } else {
      verdict.status = Status::diagnosable;
      verdict.vacuous_verifier = !found.any_infinite_run;
    }
  }
  auto t1 = std::chrono::steady_clock::now();
  verdict.time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return verdict;
}

std::optional<std::pair<Lasso, Lasso>> brute_force_oracle(
    const LabelledNet& net, ActionId fault, const AlphabetPartition& sigma,
    int depth, std::size_t node_limit) {
  if (depth < 1) throw Error("depth must be at least 1");
  LabelledNet reduced = fault_free(net, fault);
  std::vector<TransId> reduced_to_base;
  for (TransId t = 0; t < reduced.num_transitions(); ++t)
    reduced_to_base.push_back(*net.find_transition(reduced.trans_names[t]));

  ReachGraph g1 = reachability_graph(net, node_limit);
  ReachGraph g2 = reachability_graph(reduced, node_limit);

  // Twin graph over pairs of markings, synchronized on observable labels.
  detail::SearchGraph sg;
  std::vector<std::pair<TransId, TransId>> edge_moves;  // (side1, side2)
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> nodes{{0, 0}};
  std::vector<int> node_depth{0};
  index[{0, 0}] = 0;
  sg.out.emplace_back();
  const long long t1count = net.num_transitions();
  const long long t2count = reduced.num_transitions();
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int n = queue.front();
    queue.pop_front();
    if (node_depth[n] >= depth) continue;  // frontier beyond budget
    auto [n1, n2] = nodes[n];
    auto add_edge = [&](int d1, int d2, TransId m1, TransId m2, ActionId a,
                        long long key) {
      auto [it, inserted] = index.try_emplace({d1, d2}, nodes.size());
      if (inserted) {
        if (nodes.size() >= node_limit)
          throw ExplorationBudgetExceeded("twin search exceeded " +
                                          std::to_string(node_limit) +
                                          " state pairs");
        nodes.emplace_back(d1, d2);
        node_depth.push_back(node_depth[n] + 1);
        sg.out.emplace_back();
        queue.push_back(it->second);
      }
      sg.out[n].push_back(static_cast<int>(sg.edges.size()));
      sg.edges.push_back(
          {n, it->second, a, m1 != -1 && net.label[m1] == fault, key});
      edge_moves.emplace_back(m1, m2);
    };
    for (int ei : g1.out[n1]) {
      const auto& e = g1.edges[ei];
      if (sigma.is_observable(net.label[e.trans])) continue;
      add_edge(e.dst, n2, e.trans, -1, net.label[e.trans], e.trans);
    }
    for (int ei : g2.out[n2]) {
      const auto& e = g2.edges[ei];
      if (sigma.is_observable(reduced.label[e.trans])) continue;
      add_edge(n1, e.dst, -1, e.trans, reduced.label[e.trans],
               t1count + e.trans);
    }
    for (int e1 : g1.out[n1]) {
      const auto& a1 = g1.edges[e1];
      if (!sigma.is_observable(net.label[a1.trans])) continue;
      for (int e2 : g2.out[n2]) {
        const auto& a2 = g2.edges[e2];
        if (reduced.label[a2.trans] != net.label[a1.trans]) continue;
        add_edge(a1.dst, a2.dst, a1.trans, a2.trans, net.label[a1.trans],
                 t1count + t2count + a1.trans * t2count + a2.trans);
      }
    }
  }
  sg.num_nodes = static_cast<int>(nodes.size());

  auto found = detail::find_min_fault_lasso(sg, sigma.name_ranks());
  if (!found.lasso) return std::nullopt;
  auto project = [&](const std::vector<int>& seq, bool side1) {
    std::vector<TransId> out;
    for (int ei : seq) {
      auto [m1, m2] = edge_moves[ei];
      if (side1 && m1 != -1) out.push_back(m1);
      if (!side1 && m2 != -1) out.push_back(reduced_to_base[m2]);
    }
    return out;
  };
  Lasso faulty{project(found.lasso->stem, true),
               project(found.lasso->loop, true)};
  Lasso clean{project(found.lasso->stem, false),
              project(found.lasso->loop, false)};
  if (faulty.loop.empty() || clean.loop.empty())
    throw UnobservableCycle(
        "twin loop moves only one side; the input has an unobservable cycle");
  return std::make_pair(std::move(faulty), std::move(clean));
}

}  // namespace dianet
