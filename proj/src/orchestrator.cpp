#include "dianet/orchestrator.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dianet {

ComponentCheck check_component(const SystemSpec& spec, int i, ActionId fault,
                               std::size_t node_limit) {
  ComponentCheck result;
  LabelledNet local = automaton_to_net(spec.components[i]);
  result.local_diagnosable =
      is_diagnosable(local, fault, spec.sigma, node_limit).status ==
      Status::diagnosable;
  ProductNet view = component_view(spec, i, fault);
  result.view = is_diagnosable(view.net, fault, spec.sigma, node_limit);
  return result;
}

Verdict check_global(const SystemSpec& spec, ActionId fault,
                     std::size_t node_limit) {
  ProductNet pn = system_product(spec);
  return is_diagnosable(pn.net, fault, spec.sigma, node_limit);
}

namespace {

// Witness lassos of a view lift to the global product by transition name:
// both nets are built from the same component transitions, so names match.
Lasso lift_lasso(const LabelledNet& view, const LabelledNet& global,
                 const Lasso& lasso) {
  auto map_seq = [&](const std::vector<TransId>& seq) {
    std::vector<TransId> out;
    for (TransId t : seq) {
      auto g = global.find_transition(view.trans_names[t]);
      if (!g)
        throw Error("internal: view transition '" + view.trans_names[t] +
                    "' has no counterpart in the global net");
      out.push_back(*g);
    }
    return out;
  };
  return Lasso{map_seq(lasso.stem), map_seq(lasso.loop)};
}

// Order used to pick one failing view deterministically, mirroring the
// lasso search: total length, then loop word, then stem word, then
// component index.
struct WitnessRank {
  std::size_t total;
  std::vector<int> loop_word, stem_word;
  int component;
  auto operator<=>(const WitnessRank&) const = default;
};

WitnessRank rank_witness(const AlphabetPartition& sigma,
                         const LabelledNet& net, const Witness& w,
                         int component) {
  auto ranks = sigma.name_ranks();
  auto word = [&](const std::vector<TransId>& seq) {
    std::vector<int> out;
    for (TransId t : seq) out.push_back(ranks[net.label[t]]);
    return out;
  };
  return WitnessRank{w.faulty.stem.size() + w.faulty.loop.size(),
                     word(w.faulty.loop), word(w.faulty.stem), component};
}

Verdict aggregate_fault(const SystemSpec& spec, ActionId f,
                        const std::map<CheckKey, ComponentCheck>& results) {
  int n = static_cast<int>(spec.components.size());
  std::vector<int> failing;
  bool all_pass = true;
  for (int i = 0; i < n; ++i) {
    const ComponentCheck& c = results.at({i, f});
    if (c.view.status == Status::non_diagnosable) failing.push_back(i);
    all_pass &= c.local_diagnosable && c.view.status == Status::diagnosable;
  }
  Verdict v;
  v.fault = f;
  if (!failing.empty()) {
    // One non-diagnosable view already refutes the whole system; its
    // witness is a pair of runs of the global net.
    ProductNet global = system_product(spec);
    int pick = failing[0];
    std::optional<WitnessRank> best;
    for (int i : failing) {
      const Verdict& vv = results.at({i, f}).view;
      LabelledNet view_net = component_view(spec, i, f).net;
      WitnessRank r = rank_witness(spec.sigma, view_net, *vv.witness, i);
      if (!best || r < *best) {
        best = r;
        pick = i;
      }
    }
    const Verdict& vv = results.at({pick, f}).view;
    LabelledNet view_net = component_view(spec, pick, f).net;
    Witness lifted;
    lifted.faulty = lift_lasso(view_net, global.net, vv.witness->faulty);
    lifted.fault_free =
        lift_lasso(view_net, global.net, vv.witness->fault_free);
    lifted.faulty_trace = vv.witness->faulty_trace;
    lifted.fault_free_trace = vv.witness->fault_free_trace;
    lifted.observation = vv.witness->observation;
    v.status = Status::non_diagnosable;
    v.method = Method::distributed_thm1;
    v.witness = std::move(lifted);
    v.markings_explored = vv.markings_explored;
    v.time_ms = vv.time_ms;
  } else if (all_pass) {
    // Every component is diagnosable and so is every view: the system is.
    v.status = Status::diagnosable;
    v.method = Method::distributed_thm2;
    for (int i = 0; i < n; ++i) {
      v.markings_explored += results.at({i, f}).view.markings_explored;
      v.time_ms += results.at({i, f}).view.time_ms;
    }
  } else {
    v.status = Status::inconclusive;
  }
  return v;
}

}  // namespace

std::map<ActionId, Verdict> aggregate(
    const SystemSpec& spec,
    const std::map<CheckKey, ComponentCheck>& results) {
  int n = static_cast<int>(spec.components.size());
  std::map<ActionId, Verdict> out;
  for (ActionId f : spec.sigma.faults()) {
    for (int i = 0; i < n; ++i)
      if (!results.count({i, f}))
        throw IncompleteResults("missing check for component " +
                                std::to_string(i) + ", fault '" +
                                spec.sigma.name(f) + "'");
    out[f] = aggregate_fault(spec, f, results);
  }
  return out;
}

DistributedReport run_distributed(const SystemSpec& spec, bool fallback,
                                  int jobs, std::size_t node_limit) {
  DistributedReport report;
  report.system = spec.name;
  int n = static_cast<int>(spec.components.size());
  auto faults = spec.sigma.faults();

  std::vector<CheckKey> tasks;
  for (ActionId f : faults)
    for (int i = 0; i < n; ++i) tasks.emplace_back(i, f);

  std::vector<ComponentCheck> results(tasks.size());
  std::vector<std::string> task_errors(tasks.size());

#ifdef _OPENMP
  if (jobs <= 0) jobs = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
#endif
  for (int k = 0; k < static_cast<int>(tasks.size()); ++k) {
    try {
      results[k] =
          check_component(spec, tasks[k].first, tasks[k].second, node_limit);
    } catch (const std::exception& ex) {
      task_errors[k] = ex.what();
    }
  }

  std::set<ActionId> failed_faults;
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    if (!task_errors[k].empty()) {
      failed_faults.insert(tasks[k].second);
      auto& msg = report.errors[tasks[k].second];
      if (msg.empty()) msg = task_errors[k];
    } else {
      report.per_component[tasks[k]] = results[k];
    }
  }

  // A failed task poisons only its fault's verdict.
  for (ActionId f : faults) {
    if (failed_faults.count(f)) continue;
    report.aggregate[f] = aggregate_fault(spec, f, report.per_component);
  }

  if (fallback) {
    for (auto& [f, verdict] : report.aggregate) {
      if (verdict.status != Status::inconclusive) continue;
      verdict = check_global(spec, f, node_limit);
      report.fallback_used.insert(f);
    }
  }
  return report;
}

}  // namespace dianet
