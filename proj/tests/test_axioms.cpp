#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dpp/axioms.hpp"
#include "dpp/builtins.hpp"
#include "helpers.hpp"

using namespace dpp;
using namespace dpp::testing;

namespace {

TestsetSpec full_spec() {
  TestsetSpec spec;
  spec.mixture_base = 16;  // all Dirac pairs on these small instances
  spec.random_count = 8;
  spec.tuple_budget = 400000;
  return spec;
}

std::map<History, Rational> seeded_reward(const Interface& iface, std::uint64_t seed) {
  Rng rng(seed);
  std::map<History, Rational> r;
  for (int t = 0; t <= iface.horizon(); ++t)
    for (const History& h : all_histories(iface, static_cast<std::size_t>(t)))
      r[h] = Rational(static_cast<long long>(rng.next(9)) - 4, 1 + rng.next(3));
  return r;
}

bool is_dirac(const TrajDist& d) { return d.support_size() == 1; }

}  // namespace

TEST_CASE("expected reward relation passes all five axioms on any testset") {
  Interface iface({"o0", "o1"}, {"a0", "a1"}, 2);
  Environment env = uniform_env(iface, 0, uniform_obs(iface));
  AttainableSets sets = attainable(iface, env);
  TrajRelation rel = expected_reward_relation(iface, seeded_reward(iface, 3));
  TestsetSpec spec;
  spec.tuple_budget = 50000;
  std::vector<TrajDist> ts = build_testset(iface, env, sets, spec);
  for (Axiom ax : all_axioms()) {
    AxiomReport<Trajectory> rep = check_axiom(rel, ax, ts, spec);
    CAPTURE(to_string(ax));
    CHECK(rep.verdict == AxiomVerdict::PassedOnTestset);
    CHECK(rep.tuples_checked > 0);
    CHECK(rep.testset_size == ts.size());
  }
}

TEST_CASE("risk relation: consistency holds, convexity and interpolation fail") {
  RiskCase c = risk_case();
  AttainableSets sets = attainable(c.iface, c.env);
  TestsetSpec spec = full_spec();
  std::vector<TrajDist> ts = build_testset(c.iface, c.env, sets, spec);

  for (Axiom ax : {Axiom::Totality, Axiom::Transitivity, Axiom::Consistency}) {
    AxiomReport<Trajectory> rep = check_axiom(c.relation, ax, ts, spec);
    CAPTURE(to_string(ax));
    CHECK(rep.verdict == AxiomVerdict::PassedOnTestset);
  }

  AxiomReport<Trajectory> conv = check_axiom(c.relation, Axiom::Convexity, ts, spec);
  REQUIRE(conv.verdict == AxiomVerdict::Refuted);
  REQUIRE(conv.witness.has_value());
  // Witness family: two risk-free Diracs mixed with an event Dirac.
  const auto& w = *conv.witness;
  REQUIRE(w.dists.size() == 3);
  CHECK(is_dirac(w.dists[0]));
  CHECK(is_dirac(w.dists[1]));
  CHECK(is_dirac(w.dists[2]));
  CHECK(w.dists[0].mass(c.safe_low) == 1);
  CHECK(w.dists[1].mass(c.safe_high) == 1);
  CHECK(w.dists[2].mass(c.risky) == 1);
  REQUIRE(w.alpha.has_value());
  // Re-evaluate the witness: the Diracs order strictly, the mixtures tie.
  CHECK(c.relation.compare(w.dists[0], w.dists[1]) == CompareResult::Less);
  CHECK(c.relation.compare(mix(*w.alpha, w.dists[0], w.dists[2]),
                           mix(*w.alpha, w.dists[1], w.dists[2])) ==
        CompareResult::Equivalent);

  AxiomReport<Trajectory> interp =
      check_axiom(c.relation, Axiom::Interpolation, ts, spec);
  REQUIRE(interp.verdict == AxiomVerdict::Refuted);
  REQUIRE(interp.witness.has_value());
  // Re-evaluate: no alpha on the closed grid makes the mixture equivalent to B.
  const auto& iw = *interp.witness;
  for (const Rational& alpha :
       {rat(0), rat(1, 4), rat(1, 2), rat(3, 4), rat(1)}) {
    CHECK(c.relation.compare(mix(alpha, iw.dists[0], iw.dists[2]), iw.dists[1]) !=
          CompareResult::Equivalent);
  }
}

TEST_CASE("lexicographic relation: convex but not interpolating") {
  LexicographicCase c = lexicographic_case();
  AttainableSets sets = attainable(c.iface, c.env);
  TestsetSpec spec = full_spec();
  std::vector<TrajDist> ts = build_testset(c.iface, c.env, sets, spec);
  for (Axiom ax : {Axiom::Totality, Axiom::Transitivity, Axiom::Consistency,
                   Axiom::Convexity}) {
    AxiomReport<Trajectory> rep = check_axiom(c.relation, ax, ts, spec);
    CAPTURE(to_string(ax));
    CHECK(rep.verdict == AxiomVerdict::PassedOnTestset);
  }
  AxiomReport<Trajectory> interp =
      check_axiom(c.relation, Axiom::Interpolation, ts, spec);
  REQUIRE(interp.verdict == AxiomVerdict::Refuted);
  REQUIRE(interp.witness.has_value());
}

TEST_CASE("counterexample relation is total but not consistent") {
  CounterexampleCase c = counterexample_case();
  AttainableSets sets = attainable(c.iface, c.env);
  TestsetSpec spec;
  spec.tuple_budget = 60000;
  std::vector<TrajDist> ts = build_testset(c.iface, c.env, sets, spec);
  CHECK(check_axiom(c.relation, Axiom::Totality, ts, spec).verdict ==
        AxiomVerdict::PassedOnTestset);
  CHECK(check_axiom(c.relation, Axiom::Transitivity, ts, spec).verdict ==
        AxiomVerdict::PassedOnTestset);
  AxiomReport<Trajectory> cons = check_axiom(c.relation, Axiom::Consistency, ts, spec);
  REQUIRE(cons.verdict == AxiomVerdict::Refuted);
  REQUIRE(cons.witness.has_value());
  // Witness re-evaluates: A leq B yet the C-mixtures compare strictly greater.
  const auto& w = *cons.witness;
  CHECK(cmp_leq(c.relation.compare(w.dists[0], w.dists[1])));
  CHECK_FALSE(cmp_leq(c.relation.compare(mix(*w.alpha, w.dists[0], w.dists[2]),
                                         mix(*w.alpha, w.dists[1], w.dists[2]))));
}

TEST_CASE("interpolation uses the closed-form solve for linear relations") {
  Interface iface({"o0"}, {"a0", "a1"}, 1);
  std::map<History, Rational> r;
  r[hist({0})] = rat(0);
  r[hist({0, 0, 0})] = rat(0);
  r[hist({0, 1, 0})] = rat(1);
  TrajRelation rel = expected_reward_relation(iface, r);
  // Chain with an interpolation point at alpha = 1/3, off the default grid:
  // B sits at 2/3 of the way between A and C.
  TrajDist a = TrajDist::dirac(hist({0, 0, 0}));
  TrajDist cdist = TrajDist::dirac(hist({0, 1, 0}));
  TrajDist b = mix(rat(1, 3), a, cdist);
  TestsetSpec spec;
  std::vector<TrajDist> ts{a, b, cdist};
  AxiomReport<Trajectory> rep = check_axiom(rel, Axiom::Interpolation, ts, spec);
  CHECK(rep.verdict == AxiomVerdict::PassedOnTestset);
}

TEST_CASE("mixture monotonicity: passes for linear, vacuous without hypothesis") {
  Interface iface({"o0"}, {"a0", "a1"}, 1);
  std::map<History, Rational> r;
  r[hist({0})] = rat(0);
  r[hist({0, 0, 0})] = rat(0);
  r[hist({0, 1, 0})] = rat(1);
  TrajRelation rel = expected_reward_relation(iface, r);
  TrajDist lo = TrajDist::dirac(hist({0, 0, 0}));
  TrajDist hi = TrajDist::dirac(hist({0, 1, 0}));
  auto rep = mixture_monotonicity_check(rel, {rat(1, 3), rat(2, 3)}, {lo, lo}, {hi, hi});
  CHECK(rep.verdict == AxiomVerdict::PassedOnTestset);
  CHECK(rep.tuples_checked == 1);
  // Hypothesis fails (hi > lo), so the check is vacuous.
  auto vac = mixture_monotonicity_check(rel, {rat(1)}, {hi}, {lo});
  CHECK(vac.verdict == AxiomVerdict::PassedOnTestset);
  CHECK(vac.tuples_checked == 0);
  CHECK_THROWS_AS(mixture_monotonicity_check(rel, {rat(1)}, {lo}, {}), ContractError);
}

TEST_CASE("mixture monotonicity flags the counterexample relation") {
  CounterexampleCase c = counterexample_case();
  TrajDist w1 = TrajDist::dirac(c.demo_w1);
  TrajDist w2 = TrajDist::dirac(c.demo_w2);
  TrajDist w3 = TrajDist::dirac(c.demo_w3);
  // dirac(demo_w2) leq dirac(demo_w1) and dirac(demo_w3) leq itself, yet the
  // half-half mixtures compare strictly the other way.
  auto rep = mixture_monotonicity_check(c.relation, {rat(1, 2), rat(1, 2)},
                                        {w2, w3}, {w1, w3});
  REQUIRE(rep.verdict == AxiomVerdict::Refuted);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->note == "componentwise leq but mixture order broke");
}

TEST_CASE("testset recipe: diracs, grid mixtures, seeded randoms, reproducible") {
  RiskCase c = risk_case();
  AttainableSets sets = attainable(c.iface, c.env);
  TestsetSpec spec;  // library defaults, as the command line uses them
  std::vector<TrajDist> ts = build_testset(c.iface, c.env, sets, spec);
  // 4 attainable trajectories: 4 diracs + C(4,2)*3 mixtures + 16 randoms.
  CHECK(ts.size() == 4 + 18 + 16);
  for (std::size_t i = 0; i < 4; ++i) CHECK(is_dirac(ts[i]));
  std::vector<TrajDist> again = build_testset(c.iface, c.env, sets, spec);
  CHECK(ts == again);
  TestsetSpec other = spec;
  other.seed = 99;
  CHECK(build_testset(c.iface, c.env, sets, other) != ts);
}
