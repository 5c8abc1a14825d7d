#pragma once

#include <optional>
#include <string>
#include <utility>

#include "dianet/model.hpp"
#include "dianet/verifier.hpp"

namespace dianet {

enum class Status { diagnosable, non_diagnosable, inconclusive };
enum class Method { global, distributed_thm1, distributed_thm2 };

std::string to_string(Status s);
std::string to_string(Method m);

// Counterexample to diagnosability: two runs of the checked net with equal
// observable projections, of which exactly the first contains the fault.
// Runs are kept both as transition ids (replayable on the checked net) and
// as action sequences.
struct Witness {
  Lasso faulty;
  Lasso fault_free;
  TraceLasso faulty_trace;
  TraceLasso fault_free_trace;
  TraceLasso observation;
};

struct Verdict {
  ActionId fault = -1;
  Status status = Status::inconclusive;
  std::optional<Method> method;
  std::optional<Witness> witness;
  std::size_t markings_explored = 0;
  double time_ms = 0.0;          // wall clock, not part of canonical output
  bool vacuous_verifier = false;  // verifier had no infinite run at all
};

// Searches the verifier for an infinite run containing the fault. When one
// exists, returns the canonical witness lasso: minimal stem+loop length,
// ties broken by the loop's label word, then the stem's, then canonical
// transition order.
std::optional<Lasso> check_eventually_fault(
    const VerifierNet& v, const AlphabetPartition& sigma,
    std::size_t node_limit = kDefaultNodeLimit);

Verdict is_diagnosable(const LabelledNet& net, ActionId fault,
                       const AlphabetPartition& sigma,
                       std::size_t node_limit = kDefaultNodeLimit);

// Independent twin search that never builds a verifier net: synchronizes the
// reachability graphs of the net and of its fault-free version directly on
// observable labels and looks for a lasso whose first component contains the
// fault. `depth` bounds the explored BFS depth of the twin graph.
std::optional<std::pair<Lasso, Lasso>> brute_force_oracle(
    const LabelledNet& net, ActionId fault, const AlphabetPartition& sigma,
    int depth, std::size_t node_limit = kDefaultNodeLimit);

namespace detail {

// Shared deterministic lasso selection over an explicit graph. Edge labels
// are compared by action-name rank, edge keys break remaining ties; keys
// must be unique among the edges of one source node.
struct SearchGraph {
  struct Edge {
    int src;
    int dst;
    ActionId label;
    bool fault;
    long long key;
  };
  int num_nodes = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> out;  // per node, edge indices, key-sorted
};

struct EdgeLasso {
  std::vector<int> stem;  // edge indices
  std::vector<int> loop;
};

struct LassoSearchResult {
  std::optional<EdgeLasso> lasso;
  bool any_infinite_run = false;
};

LassoSearchResult find_min_fault_lasso(const SearchGraph& g,
                                       const std::vector<int>& label_rank);

}  // namespace detail

}  // namespace dianet
