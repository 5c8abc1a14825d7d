// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Runs on the built-in two-system example plus randomized
// cross-checks.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dianet/io.hpp"
#include "dianet/orchestrator.hpp"
#include "dianet/randgen.hpp"
#include "dianet/unfolding.hpp"
#include "support/fixtures.hpp"

using namespace dianet;

#ifndef DIANET_SOURCE_DIR
#define DIANET_SOURCE_DIR "."
#endif
#ifndef DIANET_CLI_PATH
#define DIANET_CLI_PATH "dianet"
#endif

namespace {

int failures = 0;

struct Criterion {
  int id;
  const char* title;
  bool ok = true;
  std::string detail;

  Criterion(int id_, const char* title_) : id(id_), title(title_) {}

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }

  ~Criterion() {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", id,
                title, detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
};

bool witness_checks(const LabelledNet& net, const AlphabetPartition& sigma,
                    ActionId fault, const Witness& w,
                    const TraceLasso& expected_obs, Criterion& c) {
  c.expect(replays(net, w.faulty), "faulty lasso does not replay");
  c.expect(replays(net, w.fault_free), "fault-free lasso does not replay");
  TraceLasso ft = to_trace(net, w.faulty);
  TraceLasso ct = to_trace(net, w.fault_free);
  auto count = [&](const TraceLasso& t) {
    return std::count(t.stem.begin(), t.stem.end(), fault) +
           std::count(t.loop.begin(), t.loop.end(), fault);
  };
  c.expect(count(ft) > 0, "faulty trace lacks the fault");
  c.expect(count(ct) == 0, "fault-free trace carries the fault");
  c.expect(obs_projection(ft, sigma) == expected_obs,
           "faulty observation mismatch");
  c.expect(obs_projection(ct, sigma) == expected_obs,
           "fault-free observation mismatch");
  return c.ok;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main() {
  auto ab = fixtures::make_ab();
  auto cd = fixtures::make_cd();

  {  // 1. every component is diagnosable on its own
    Criterion c{1, "components A, B, C, D are diagnosable standalone"};
    struct Case {
      const Automaton* a;
      const AlphabetPartition* sigma;
      ActionId fault;
    };
    for (const Case& k :
         {Case{&ab.A, &ab.sigma, ab.f}, Case{&ab.B, &ab.sigma, ab.f},
          Case{&cd.C, &cd.sigma, cd.f}, Case{&cd.D, &cd.sigma, cd.f}}) {
      Verdict v = is_diagnosable(automaton_to_net(*k.a), k.fault, *k.sigma);
      c.expect(v.status == Status::diagnosable,
               "component " + k.a->name + " not diagnosable");
    }
  }

  ProductNet n1 = system_product(ab.spec);
  ProductNet n2 = system_product(cd.spec);

  {  // 2. global verdicts with the published witness shape
    Criterion c{2, "global: N1 diagnosable, N2 refuted by o2 (o4)^w"};
    Verdict v1 = is_diagnosable(n1.net, ab.f, ab.sigma);
    c.expect(v1.status == Status::diagnosable, "N1 not diagnosable");
    Verdict v2 = is_diagnosable(n2.net, cd.f, cd.sigma);
    c.expect(v2.status == Status::non_diagnosable, "N2 not refuted");
    if (v2.witness)
      witness_checks(n2.net, cd.sigma, cd.f, *v2.witness,
                     TraceLasso{{cd.o2}, {cd.o4}}, c);
    else
      c.expect(false, "N2 verdict has no witness");
  }

  {  // 3. component views
    Criterion c{3, "views: B and A pass, D is refuted"};
    Verdict vb =
        is_diagnosable(component_view(ab.spec, 1, ab.f).net, ab.f, ab.sigma);
    c.expect(vb.status == Status::diagnosable, "view of B not diagnosable");
    Verdict va =
        is_diagnosable(component_view(ab.spec, 0, ab.f).net, ab.f, ab.sigma);
    c.expect(va.status == Status::diagnosable, "view of A not diagnosable");
    Verdict vd =
        is_diagnosable(component_view(cd.spec, 1, cd.f).net, cd.f, cd.sigma);
    c.expect(vd.status == Status::non_diagnosable, "view of D not refuted");
  }

  {  // 4. the verifier lasso of the view of D splits into the known pair
    Criterion c{4, "verifier witness for the view of D"};
    ProductNet view = component_view(cd.spec, 1, cd.f);
    VerifierNet v = build_verifier(view.net, cd.f, cd.sigma);
    auto lasso = check_eventually_fault(v, cd.sigma);
    c.expect(lasso.has_value(), "no fault lasso found");
    if (lasso) {
      auto [faulty, clean] = split_trace(v, *lasso);
      Witness w;
      w.faulty = faulty;
      w.fault_free = clean;
      witness_checks(view.net, cd.sigma, cd.f, w,
                     TraceLasso{{cd.o2}, {cd.o4}}, c);
    }
  }

  {  // 5. distributed aggregation with the exact method fields
    Criterion c{5, "distributed: thm2 proves N1, thm1 refutes N2"};
    DistributedReport r1 = run_distributed(ab.spec, true);
    c.expect(r1.aggregate.at(ab.f).status == Status::diagnosable,
             "N1 aggregate wrong");
    c.expect(r1.aggregate.at(ab.f).method == Method::distributed_thm2,
             "N1 method wrong");
    c.expect(r1.fallback_used.empty(), "N1 used fallback");

    DistributedReport r2 = run_distributed(cd.spec, true);
    const Verdict& v2 = r2.aggregate.at(cd.f);
    c.expect(v2.status == Status::non_diagnosable, "N2 aggregate wrong");
    c.expect(v2.method == Method::distributed_thm1, "N2 method wrong");
    c.expect(r2.fallback_used.empty(), "N2 used fallback");
    if (v2.witness) {
      // lifted from the view of D and replayable on the full product
      witness_checks(n2.net, cd.sigma, cd.f, *v2.witness,
                     TraceLasso{{cd.o2}, {cd.o4}}, c);
    } else {
      c.expect(false, "N2 aggregate has no witness");
    }
  }

  {  // 6. verifier vs. brute force on 200 random systems
    Criterion c{6, "oracle equivalence on 200 randomized systems"};
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(20240601);
    RandomSystemParams params;
    params.min_components = 2;
    params.max_components = 3;
    params.max_states = 6;
    params.max_observables = 3;  // 3 + 2 faults + 3 private = 8 actions max
    params.max_faults = 2;
    params.max_private_unobservables = 1;
    int disagreements = 0, conclusive_mismatches = 0;
    for (int round = 0; round < 200; ++round) {
      SystemSpec spec =
          random_system(rng, params, "R" + std::to_string(round));
      if (spec.sigma.size() > 8) {
        c.expect(false, "generator exceeded the action budget");
        break;
      }
      ProductNet pn = system_product(spec);
      DistributedReport report = run_distributed(spec, false, 2);
      for (ActionId f : spec.sigma.faults()) {
        Verdict global = is_diagnosable(pn.net, f, spec.sigma);
        auto twin = brute_force_oracle(pn.net, f, spec.sigma, 100000);
        if ((global.status == Status::non_diagnosable) != twin.has_value())
          ++disagreements;
        const Verdict& dist = report.aggregate.at(f);
        if (dist.status != Status::inconclusive &&
            dist.status != global.status)
          ++conclusive_mismatches;
      }
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    c.expect(disagreements == 0,
             std::to_string(disagreements) + " verifier/oracle disagreements");
    c.expect(conclusive_mismatches == 0,
             std::to_string(conclusive_mismatches) +
                 " distributed/global mismatches");
    c.expect(secs < 300.0, "took " + std::to_string(secs) + "s");
  }

  {  // 7. unfolding completeness on every fixture net and verifier
    Criterion c{7, "prefix markings equal reachable markings everywhere"};
    struct Fixture {
      LabelledNet net;
      const AlphabetPartition* sigma;
      ActionId fault;
    };
    std::vector<Fixture> fixtures;
    for (const Automaton* a : {&ab.A, &ab.B})
      fixtures.push_back({automaton_to_net(*a), &ab.sigma, ab.f});
    for (const Automaton* a : {&cd.C, &cd.D})
      fixtures.push_back({automaton_to_net(*a), &cd.sigma, cd.f});
    fixtures.push_back({n1.net, &ab.sigma, ab.f});
    fixtures.push_back({n2.net, &cd.sigma, cd.f});
    for (int i = 0; i < 2; ++i) {
      fixtures.push_back(
          {component_view(ab.spec, i, ab.f).net, &ab.sigma, ab.f});
      fixtures.push_back(
          {component_view(cd.spec, i, cd.f).net, &cd.sigma, cd.f});
    }
    std::size_t base_count = fixtures.size();
    for (std::size_t i = 0; i < base_count; ++i)
      fixtures.push_back(
          {build_verifier(fixtures[i].net, fixtures[i].fault,
                          *fixtures[i].sigma)
               .net,
           fixtures[i].sigma, fixtures[i].fault});
    for (const auto& fx : fixtures) {
      OccurrenceNet on = unfold(fx.net);
      ReachGraph g = reachability_graph(fx.net);
      std::set<Marking> reachable(g.nodes.begin(), g.nodes.end());
      c.expect(prefix_markings(on) == reachable,
               "prefix of '" + fx.net.name + "' misses markings");
      c.expect(on.num_noncutoff_events() <=
                   static_cast<int>(reachable.size()),
               "prefix of '" + fx.net.name + "' exceeds the size bound");
    }
  }

  {  // 8. CLI determinism across worker counts
    Criterion c{8, "check --distributed emits identical JSON for 1 and 8 jobs"};
    const char* files[] = {"ab.dia", "cd.dia", "abcd.dia",
                           "inconclusive.dia"};
    for (const char* file : files) {
      std::string input = std::string(DIANET_SOURCE_DIR) + "/data/" + file;
      std::vector<std::string> outputs;
      for (int round = 0; round < 2; ++round) {
        std::string out1 = "/tmp/dianet_j1_" + std::to_string(round) + ".json";
        std::string out8 = "/tmp/dianet_j8_" + std::to_string(round) + ".json";
        std::string base = std::string(DIANET_CLI_PATH) +
                           " check " + input + " --distributed";
        int rc1 = std::system(
            (base + " --jobs 1 --json " + out1 + " > /dev/null").c_str());
        int rc8 = std::system(
            (base + " --jobs 8 --json " + out8 + " > /dev/null").c_str());
        c.expect(WIFEXITED(rc1) && WIFEXITED(rc8) &&
                     WEXITSTATUS(rc1) == WEXITSTATUS(rc8),
                 std::string(file) + ": exit codes differ");
        outputs.push_back(slurp(out1));
        outputs.push_back(slurp(out8));
      }
      c.expect(!outputs[0].empty(), std::string(file) + ": empty JSON");
      for (std::size_t i = 1; i < outputs.size(); ++i)
        c.expect(outputs[i] == outputs[0],
                 std::string(file) + ": JSON differs across runs/jobs");
    }
  }

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
