#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "tilelab/constructions.hpp"
#include "tilelab/pipeline.hpp"

using namespace tilelab;

namespace {

PartitionModel ideal() { return build_partition_model(3, 1, 10, 2); }

ExtremalGraph h0() { return build_extremal({3, 1, 10, InteriorMode::empty}); }

}  // namespace

TEST_CASE("witness search") {
  auto [h, a, b] = h0();
  auto w = find_extremal_witness(h, 1, 0.01, WitnessMode::exhaustive);
  REQUIRE(w.has_value());
  CHECK(popcount(w->b) == 8);
  CHECK(subset_of(w->b, b));
  CHECK(w->eb == 0);

  KGraph k10 = build_basic(BasicKind::complete, 3, 10);
  CHECK(!find_extremal_witness(k10, 1, 0.01, WitnessMode::exhaustive).has_value());

  auto [hp, x, y] = ideal();
  auto wp = find_extremal_witness(hp, 1, 0.01, WitnessMode::exhaustive);
  REQUIRE(wp.has_value());
  CHECK(wp->b == y);
  CHECK(wp->eb == 0);

  CHECK_THROWS_AS(find_extremal_witness(build_basic(BasicKind::complete, 3, 9), 1,
                                        0.01, WitnessMode::exhaustive),
                  std::invalid_argument);
}

TEST_CASE("local search witness agrees on easy instances") {
  auto [h, a, b] = h0();
  auto w = find_extremal_witness(h, 1, 0.01, WitnessMode::local_search);
  REQUIRE(w.has_value());
  CHECK(w->eb == 0);
  CHECK(!w->exhaustive);
}

TEST_CASE("classification") {
  auto [hp, x, y] = ideal();
  auto w = find_extremal_witness(hp, 1, 0.01, WitnessMode::exhaustive);
  REQUIRE(w.has_value());
  Classification c = classify(hp, *w);
  CHECK(c.a_prime == x);
  CHECK(c.b_prime == y);
  CHECK(c.v0 == 0);
  CHECK(c.eps1 == doctest::Approx(std::cbrt(0.01)));
  CHECK(c.eps2 == doctest::Approx(2.0 * std::cbrt(0.01) * std::cbrt(0.01)));

  // Complete graph with a forced witness: vertices outside B clear the A'
  // threshold, but a vertex inside B only sees C(7,2) = 21 of the 28 pairs.
  KGraph k10 = build_basic(BasicKind::complete, 3, 10);
  ExtremalWitness forced{full_mask(8), 0.01, 56, true};
  Classification cc = classify(k10, forced);
  CHECK(cc.a_prime == mask_of({8, 9}));
  CHECK(cc.b_prime == 0);
  CHECK(cc.v0 == full_mask(8));

  auto [h, a, b] = h0();
  auto wh = find_extremal_witness(h, 1, 0.01, WitnessMode::exhaustive);
  REQUIRE(wh.has_value());
  Classification ch = classify(h, *wh);
  CHECK(ch.a_prime == a);
  CHECK(popcount(ch.b_prime) == 9);
  CHECK(ch.v0 == 0);
  CHECK(popcount(ch.b_prime) - popcount(wh->b) == 1);  // q = 1
}

TEST_CASE("classification diagnostics") {
  auto [hp, x, y] = ideal();
  auto w = find_extremal_witness(hp, 1, 0.01, WitnessMode::exhaustive);
  Classification c = classify(hp, *w);
  auto checks = check_claim1(hp, *w, c);
  REQUIRE(checks.size() == 5);
  for (const auto& chk : checks) {
    CHECK(chk.lhs == 0.0);
    CHECK(chk.pass);
  }

  // H0 at desk scale: |B'\B| = 1 exceeds eps2*|B|, reported as FAIL.
  auto [h, a, b] = h0();
  auto wh = find_extremal_witness(h, 1, 0.01, WitnessMode::exhaustive);
  Classification ch = classify(h, *wh);
  auto hchecks = check_claim1(h, *wh, ch);
  CHECK(hchecks[1].lhs == 0.0);  // |B\B'|
  CHECK(hchecks[3].lhs == 1.0);  // |B'\B|
  CHECK(!hchecks[3].pass);
}

TEST_CASE("stage 1 finds q copies in a planted B'") {
  KGraph k9 = build_basic(BasicKind::complete, 3, 9);
  PipelineState s;
  s.h = &k9;
  s.pattern = {3, 1};
  s.cls.b_prime = k9.all_vertices();
  s.q = 1;
  auto st = stage_y1(s);
  CHECK(st.ok);
  CHECK(s.y1.size() == 1);
  CHECK(popcount(s.y1.covered) == 5);

  PipelineState s0;
  s0.h = &k9;
  s0.pattern = {3, 1};
  s0.q = 0;
  CHECK(stage_y1(s0).ok);
  CHECK(s0.y1.size() == 0);

  KGraph edgeless(9, 3, {});
  PipelineState sf;
  sf.h = &edgeless;
  sf.pattern = {3, 1};
  sf.cls.b_prime = edgeless.all_vertices();
  sf.q = 1;
  auto stf = stage_y1(sf);
  CHECK(!stf.ok);
  CHECK(stf.reason == "no-copy-in-Bprime");
}

TEST_CASE("stage 2 lifts link copies over V0") {
  // w = 8 with a complete link into B' = {0..7}.
  std::vector<Mask> edges;
  for_each_subset(full_mask(8), 2, [&](Mask pair) { edges.push_back(pair | bit(8)); });
  KGraph h(9, 3, edges);
  PipelineState s;
  s.h = &h;
  s.pattern = {3, 1};
  s.cls.b_prime = full_mask(8);
  s.cls.v0 = bit(8);
  auto st = stage_y2(s);
  CHECK(st.ok);
  REQUIRE(s.y2.size() == 1);
  const YCopy& c = s.y2.copies[0];
  CHECK(c.shared == bit(8));  // shared set is exactly {w}, ell = 1
  CHECK(popcount(c.edge1() & c.edge2()) == 1);
  CHECK(h.has_edge(c.edge1()));
  CHECK(h.has_edge(c.edge2()));

  KGraph edgeless(9, 3, {});
  PipelineState sf;
  sf.h = &edgeless;
  sf.pattern = {3, 1};
  sf.cls.b_prime = full_mask(8);
  sf.cls.v0 = bit(8);
  auto stf = stage_y2(sf);
  CHECK(!stf.ok);
  CHECK(stf.reason == "no-link-copy");
}

TEST_CASE("stage 3 balances A1 against B1") {
  // p = -1: A1 = {0,1}, B1 = {2,3,4}; all triples through 0 or 1 present.
  std::vector<Mask> edges;
  for_each_subset(mask_of({2, 3, 4}), 2, [&](Mask pair) {
    edges.push_back(pair | bit(0));
    edges.push_back(pair | bit(1));
  });
  KGraph h(5, 3, edges);
  PipelineState s;
  s.h = &h;
  s.pattern = {3, 1};
  s.cls.a_prime = mask_of({0, 1});
  s.cls.b_prime = mask_of({2, 3, 4});
  s.q = -1;
  auto st = stage_y3(s);
  CHECK(st.ok);
  CHECK(s.p == -1);
  REQUIRE(s.y3.size() == 1);
  const YCopy& c = s.y3.copies[0];
  CHECK(popcount(c.vertices() & s.cls.a_prime) == 2);
  CHECK(popcount(c.edge1() & c.edge2()) == 1);
  CHECK(s.a2 == 0);
  CHECK(s.b2 == 0);

  // Empty common link: no edge through vertex 1.
  std::vector<Mask> half;
  for_each_subset(mask_of({2, 3, 4}), 2, [&](Mask pair) { half.push_back(pair | bit(0)); });
  KGraph h2(5, 3, half);
  PipelineState s2;
  s2.h = &h2;
  s2.pattern = {3, 1};
  s2.cls.a_prime = mask_of({0, 1});
  s2.cls.b_prime = mask_of({2, 3, 4});
  s2.q = -1;
  auto st2 = stage_y3(s2);
  CHECK(!st2.ok);
  CHECK(st2.reason == "no-common-link-copy");
}

TEST_CASE("stage 3 on the ideal model is a no-op") {
  auto [hp, x, y] = ideal();
  PipelineState s;
  s.h = &hp;
  s.pattern = {3, 1};
  s.cls.a_prime = x;
  s.cls.b_prime = y;
  s.q = 0;
  auto st = stage_y3(s);
  CHECK(st.ok);
  CHECK(s.p == 0);
  CHECK(s.y3.size() == 0);
  CHECK(popcount(s.b2) == 4 * popcount(s.a2));
}

TEST_CASE("partition conditions") {
  auto [hp, x, y] = ideal();
  auto rep = check_partition_conditions(hp, x, y, 1, 0.0);
  CHECK(rep.size_ok);
  CHECK(rep.all_pass);
  CHECK(rep.worst_x.lhs == 0.0);
  CHECK(rep.worst_y.lhs == 0.0);

  auto bad = check_partition_conditions(hp, x, y & ~bit(9), 1, 0.0);
  CHECK(!bad.size_ok);

  // Delete one XY^2 edge: condition (b) fails at rho = 0.
  std::vector<Mask> edges = hp.edges();
  Mask victim = 0;
  for (Mask e : edges)
    if (popcount(e & x) == 1 && popcount(e & y) == 2) victim = e;
  REQUIRE(victim != 0);
  std::erase(edges, victim);
  KGraph pruned(10, 3, edges);
  auto perturbed = check_partition_conditions(pruned, x, y, 1, 0.0);
  CHECK(!perturbed.worst_y.pass);
  CHECK(perturbed.worst_y.lhs == 1.0);
}

TEST_CASE("partition factor") {
  // Single X-vertex, all XY^2 edges present.
  std::vector<Mask> edges;
  for_each_subset(mask_of({1, 2, 3, 4}), 2, [&](Mask pair) { edges.push_back(pair | bit(0)); });
  KGraph h(5, 3, edges);
  auto res = partition_factor(h, bit(0), mask_of({1, 2, 3, 4}), 1);
  REQUIRE(res.outcome == FactorOutcome::found);
  REQUIRE(res.tiling->size() == 1);
  CHECK(res.tiling->copies[0].shared == bit(0));
  CHECK(res.tiling->copies[0].edge1() == mask_of({0, 1, 2}));
  CHECK(res.tiling->copies[0].edge2() == mask_of({0, 3, 4}));

  auto [hp, x, y] = ideal();
  auto rp = partition_factor(hp, x, y, 1);
  REQUIRE(rp.outcome == FactorOutcome::found);
  CHECK(rp.tiling->size() == 2);
  CHECK(verify_tiling(hp, {3, 1}, *rp.tiling, true).ok);
  for (const YCopy& c : rp.tiling->copies) CHECK(popcount(c.vertices() & x) == 1);

  auto empty = partition_factor(h, 0, 0, 1);
  CHECK(empty.outcome == FactorOutcome::found);
  CHECK(empty.tiling->size() == 0);
}

TEST_CASE("run_pipeline on the ideal model") {
  auto [hp, x, y] = ideal();
  auto rep = run_pipeline(hp, {3, 1}, 0.01, WitnessMode::exhaustive);
  REQUIRE(rep.success);
  CHECK(rep.state.cls.v0 == 0);
  CHECK(rep.state.q == 0);
  CHECK(rep.state.p == 0);
  CHECK(popcount(rep.state.b2) == 4 * popcount(rep.state.a2));
  CHECK(rep.factor.size() == 2);
  CHECK(verify_tiling(hp, {3, 1}, rep.factor, true).ok);
  CHECK(rep.text.find("RESULT\nFACTOR") != std::string::npos);
}

TEST_CASE("run_pipeline fails structurally on the extremal graph") {
  auto [h, a, b] = h0();
  auto rep = run_pipeline(h, {3, 1}, 0.01, WitnessMode::exhaustive);
  CHECK(!rep.success);
  CHECK(rep.failed_stage == "Y1");
  CHECK(rep.reason == "no-copy-in-Bprime");
  CHECK(rep.state.q == 1);
  CHECK(rep.text.find("FAIL Y1") != std::string::npos);
  // The instance sits exactly one below the codegree floor that would force a factor.
  CHECK(h.min_d_degree(2) == 10 / 5 - 1);
}

TEST_CASE("run_pipeline rejects out-of-scope parameters") {
  KGraph k10 = build_basic(BasicKind::complete, 3, 10);
  CHECK_THROWS_AS(run_pipeline(k10, {3, 2}, 0.01, WitnessMode::exhaustive),
                  std::invalid_argument);  // ell = k-1 out of pipeline scope
  CHECK_THROWS_AS(run_pipeline(build_basic(BasicKind::complete, 3, 9), {3, 1},
                               0.01, WitnessMode::exhaustive),
                  std::invalid_argument);
}

TEST_CASE("pipeline report renders every inequality with both sides") {
  auto [hp, x, y] = ideal();
  auto rep = run_pipeline(hp, {3, 1}, 0.01, WitnessMode::exhaustive);
  CHECK(rep.text.find("WITNESS\n") != std::string::npos);
  CHECK(rep.text.find("CLAIM1\n") != std::string::npos);
  CHECK(rep.text.find("|V0|: 0 <= ") != std::string::npos);
  CHECK(rep.text.find(" : PASS") != std::string::npos);
}
