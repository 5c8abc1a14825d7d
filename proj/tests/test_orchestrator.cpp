#include <doctest.h>

#include <algorithm>

#include "dianet/io.hpp"
#include "dianet/orchestrator.hpp"
#include "support/fixtures.hpp"

using namespace dianet;

TEST_CASE("component check of D against the reduced C") {
  auto cd = fixtures::make_cd();
  ComponentCheck c = check_component(cd.spec, 1, cd.f);
  CHECK(c.local_diagnosable);
  CHECK(c.view.status == Status::non_diagnosable);
}

TEST_CASE("component check of A against the reduced B") {
  auto ab = fixtures::make_ab();
  ComponentCheck c = check_component(ab.spec, 0, ab.f);
  CHECK(c.local_diagnosable);
  CHECK(c.view.status == Status::diagnosable);
}

TEST_CASE("component check on a single-component system") {
  auto ab = fixtures::make_ab();
  SystemSpec solo{"solo", ab.sigma, {ab.B}};
  ComponentCheck c = check_component(solo, 0, ab.f);
  CHECK(c.local_diagnosable ==
        (c.view.status == Status::diagnosable));
}

TEST_CASE("aggregation concludes non-diagnosability of N2 from the view of D") {
  auto cd = fixtures::make_cd();
  std::map<CheckKey, ComponentCheck> results;
  for (int i = 0; i < 2; ++i) results[{i, cd.f}] = check_component(cd.spec, i, cd.f);
  // both views fail here; the canonical witness comes from D's view
  CHECK(results[{0, cd.f}].view.status == Status::non_diagnosable);
  CHECK(results[{1, cd.f}].view.status == Status::non_diagnosable);

  auto verdicts = aggregate(cd.spec, results);
  const Verdict& v = verdicts.at(cd.f);
  CHECK(v.status == Status::non_diagnosable);
  CHECK(v.method == Method::distributed_thm1);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->observation == TraceLasso{{cd.o2}, {cd.o4}});
  // the lifted witness is a pair of runs of the global product
  ProductNet n2 = system_product(cd.spec);
  CHECK(replays(n2.net, v.witness->faulty));
  CHECK(replays(n2.net, v.witness->fault_free));
}

TEST_CASE("aggregation concludes diagnosability of N1") {
  auto ab = fixtures::make_ab();
  std::map<CheckKey, ComponentCheck> results;
  for (int i = 0; i < 2; ++i) results[{i, ab.f}] = check_component(ab.spec, i, ab.f);
  auto verdicts = aggregate(ab.spec, results);
  CHECK(verdicts.at(ab.f).status == Status::diagnosable);
  CHECK(verdicts.at(ab.f).method == Method::distributed_thm2);
}

TEST_CASE("aggregation is inconclusive when a component fails locally") {
  SystemSpec inc = fixtures::make_inconclusive();
  ActionId f = inc.sigma.faults()[0];
  std::map<CheckKey, ComponentCheck> results;
  for (int i = 0; i < 2; ++i) results[{i, f}] = check_component(inc, i, f);
  CHECK(!results[{0, f}].local_diagnosable);
  CHECK(results[{0, f}].view.status == Status::diagnosable);
  CHECK(results[{1, f}].local_diagnosable);
  CHECK(results[{1, f}].view.status == Status::diagnosable);

  auto verdicts = aggregate(inc, results);
  CHECK(verdicts.at(f).status == Status::inconclusive);
  CHECK(!verdicts.at(f).method.has_value());
}

TEST_CASE("aggregation rejects incomplete result maps") {
  auto cd = fixtures::make_cd();
  std::map<CheckKey, ComponentCheck> results;
  results[{0, cd.f}] = check_component(cd.spec, 0, cd.f);
  CHECK_THROWS_AS(aggregate(cd.spec, results), IncompleteResults);
}

TEST_CASE("distributed run on the two paper systems") {
  auto ab = fixtures::make_ab();
  DistributedReport r1 = run_distributed(ab.spec, true);
  CHECK(r1.aggregate.at(ab.f).status == Status::diagnosable);
  CHECK(r1.aggregate.at(ab.f).method == Method::distributed_thm2);
  CHECK(r1.fallback_used.empty());
  CHECK(r1.errors.empty());

  auto cd = fixtures::make_cd();
  DistributedReport r2 = run_distributed(cd.spec, true);
  CHECK(r2.aggregate.at(cd.f).status == Status::non_diagnosable);
  CHECK(r2.aggregate.at(cd.f).method == Method::distributed_thm1);
  CHECK(r2.fallback_used.empty());
}

TEST_CASE("fallback resolves the inconclusive instance") {
  SystemSpec inc = fixtures::make_inconclusive();
  ActionId f = inc.sigma.faults()[0];

  DistributedReport no_fb = run_distributed(inc, false);
  CHECK(no_fb.aggregate.at(f).status == Status::inconclusive);
  CHECK(no_fb.fallback_used.empty());

  DistributedReport fb = run_distributed(inc, true);
  CHECK(fb.aggregate.at(f).status == Status::diagnosable);
  CHECK(fb.aggregate.at(f).method == Method::global);
  CHECK(fb.fallback_used == std::set<ActionId>{f});

  // the global verdict agrees with the full product check
  Verdict global = check_global(inc, f);
  CHECK(global.status == Status::diagnosable);
}

TEST_CASE("worker count does not change the report") {
  for (int which = 0; which < 2; ++which) {
    SystemSpec spec =
        which == 0 ? fixtures::make_ab().spec : fixtures::make_cd().spec;
    DistributedReport a = run_distributed(spec, true, 1);
    DistributedReport b = run_distributed(spec, true, 8);
    CHECK(emit_verdict_json(a, spec.sigma) == emit_verdict_json(b, spec.sigma));
  }
}

TEST_CASE("node budget failures poison only their fault") {
  auto cd = fixtures::make_cd();
  DistributedReport r = run_distributed(cd.spec, false, 2, 4);
  CHECK(r.aggregate.count(cd.f) == 0);
  CHECK(r.errors.count(cd.f) == 1);
}
