#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dpp/builtins.hpp"
#include "dpp/relation.hpp"
#include "dpp/rng.hpp"
#include "helpers.hpp"

using namespace dpp;
using namespace dpp::testing;

namespace {

// Oracle-side expectation: plain sum over support, written independently.
Rational expect(const TrajDist& d, const std::map<Trajectory, Rational>& u) {
  Rational e(0);
  for (const auto& [w, p] : d.entries()) e += p * u.at(w);
  return e;
}

std::map<History, Rational> zero_reward(const Interface& iface) {
  std::map<History, Rational> r;
  for (int t = 0; t <= iface.horizon(); ++t)
    for (const History& h : all_histories(iface, static_cast<std::size_t>(t)))
      r[h] = Rational(0);
  return r;
}

}  // namespace

TEST_CASE("cumulative utility sums rewards over every prefix") {
  Interface iface({"o0"}, {"a0", "a1"}, 2);
  std::map<History, Rational> r = zero_reward(iface);
  Trajectory w = hist({0, 1, 0, 0, 0});
  r[w.prefix(0)] = rat(1, 2);
  r[w.prefix(1)] = rat(1, 3);
  r[w.prefix(2)] = rat(1, 6);
  CHECK(cumulative_utility(r, w) == rat(1));
  r.erase(w.prefix(1));
  CHECK_THROWS_AS(cumulative_utility(r, w), ContractError);
}

TEST_CASE("expected reward relation orders by expected cumulative reward") {
  // Two-trajectory instance: u_r, via terminal rewards, is 0 on w1 and 1 on w2.
  Interface iface({"o0"}, {"a0", "a1"}, 1);
  std::map<History, Rational> r = zero_reward(iface);
  Trajectory w1 = hist({0, 0, 0});
  Trajectory w2 = hist({0, 1, 0});
  r[w2] = rat(1);
  TrajRelation rel = expected_reward_relation(iface, r);
  TrajDist even = TrajDist::make({{w1, rat(1, 2)}, {w2, rat(1, 2)}});
  CHECK(rel.compare(even, TrajDist::dirac(w2)) == CompareResult::Less);
  CHECK(rel.compare(even, TrajDist::dirac(w1)) == CompareResult::Greater);
  CHECK(rel.compare(even, mix(rat(1, 2), TrajDist::dirac(w1), TrajDist::dirac(w2))) ==
        CompareResult::Equivalent);
  REQUIRE(rel.value() != nullptr);
  CHECK(rel.linear_value());
  CHECK((*rel.value())(even) == rat(1, 2));
}

TEST_CASE("expected reward relation requires a total reward map") {
  Interface iface({"o0"}, {"a0"}, 1);
  std::map<History, Rational> r = zero_reward(iface);
  r.erase(hist({0, 0, 0}));
  CHECK_THROWS_AS(expected_reward_relation(iface, r), ContractError);
}

TEST_CASE("ordering is invariant under positive affine reward transforms") {
  Interface iface({"o0", "o1"}, {"a0", "a1"}, 2);
  Rng rng(7);
  std::map<History, Rational> r;
  for (int t = 0; t <= 2; ++t)
    for (const History& h : all_histories(iface, static_cast<std::size_t>(t)))
      r[h] = Rational(static_cast<long long>(rng.next(9)) - 4, 1 + rng.next(3));
  std::map<History, Rational> r2;
  for (const auto& [h, v] : r) r2[h] = rat(3, 2) * v + rat(5, 7);
  TrajRelation rel1 = expected_reward_relation(iface, r);
  TrajRelation rel2 = expected_reward_relation(iface, r2);
  std::vector<Trajectory> omega = all_histories(iface, 2);
  for (int i = 0; i < 60; ++i) {
    TrajDist a = random_dist(rng, omega);
    TrajDist b = random_dist(rng, omega);
    CHECK(rel1.compare(a, b) == rel2.compare(a, b));
  }
}

TEST_CASE("comparison oracles are coherent: flip symmetry and reflexivity") {
  RiskCase risk = risk_case();
  LexicographicCase lex = lexicographic_case();
  CounterexampleCase cx = counterexample_case();
  struct Item {
    const TrajRelation* rel;
    const Interface* iface;
  };
  for (const auto& [rel, iface] : {Item{&risk.relation, &risk.iface},
                                   Item{&lex.relation, &lex.iface},
                                   Item{&cx.relation, &cx.iface}}) {
    std::vector<Trajectory> omega = all_histories(*iface, 2);
    Rng rng(11);
    for (int i = 0; i < 40; ++i) {
      TrajDist a = random_dist(rng, omega);
      TrajDist b = random_dist(rng, omega);
      CHECK(cmp_flip(rel->compare(a, b)) == rel->compare(b, a));
      CHECK(rel->compare(a, a) == CompareResult::Equivalent);
    }
  }
}

TEST_CASE("risk relation construction checks its preconditions") {
  RiskCase base = risk_case();
  auto u = base.utility;
  std::set<Trajectory> event = base.event;
  CHECK_THROWS_AS(risk_relation(u, rat(-1), {}), ContractError);
  std::set<Trajectory> all;
  for (const auto& [w, v] : u) all.insert(w);
  CHECK_THROWS_AS(risk_relation(u, rat(-1), all), ContractError);
  CHECK_THROWS_AS(risk_relation(u, rat(0), event), ContractError);
  CHECK_THROWS_AS(risk_relation(u, rat(1, 2), event), ContractError);
  auto constant = u;
  for (auto& [w, v] : constant)
    if (!event.count(w)) v = rat(5);
  CHECK_THROWS_AS(risk_relation(constant, rat(-1), event), ContractError);
  Trajectory stranger = hist({0, 1, 0, 1, 0});
  stranger.steps.push_back({0, 0});  // not in the domain
  CHECK_THROWS_AS(risk_relation(u, rat(-1), {stranger}), ContractError);
}

TEST_CASE("risk relation ordering: tiers and reversed event mass") {
  RiskCase c = risk_case();
  const TrajRelation& rel = c.relation;
  TrajDist low = TrajDist::dirac(c.safe_low);
  TrajDist high = TrajDist::dirac(c.safe_high);
  TrajDist risky = TrajDist::dirac(c.risky);
  // Risk-free tier ordered by expected utility.
  CHECK(rel.compare(low, high) == CompareResult::Less);
  CHECK(expect(low, c.utility) < expect(high, c.utility));
  // Any event-free distribution sits strictly above any event-touching one.
  CHECK(rel.compare(low, risky) == CompareResult::Greater);
  CHECK(rel.compare(mix(rat(1, 2), low, high), risky) == CompareResult::Greater);
  // Within the risky tier, more event mass is worse.
  TrajDist half_risky = mix(rat(1, 2), risky, low);
  CHECK(rel.compare(half_risky, risky) == CompareResult::Greater);
  CHECK(rel.compare(risky, half_risky) == CompareResult::Less);
  CHECK(rel.compare(half_risky, mix(rat(1, 2), risky, high)) ==
        CompareResult::Equivalent);
}

TEST_CASE("lexicographic relation: strict primary gap dominates, ties defer") {
  LexicographicCase c = lexicographic_case();
  const TrajRelation& rel = c.relation;
  Trajectory w00 = hist({0, 0, 0, 0, 0});
  Trajectory w01 = hist({0, 0, 0, 1, 0});
  Trajectory w10 = hist({0, 1, 0, 0, 0});
  Trajectory w11 = hist({0, 1, 0, 1, 0});
  // u1 tie between w00 and w01: u2 breaks it.
  CHECK(c.u1.at(w00) == c.u1.at(w01));
  CHECK(rel.compare(TrajDist::dirac(w00), TrajDist::dirac(w01)) == CompareResult::Less);
  // Strict u1 gap wins even though u2 prefers the other side.
  CHECK(c.u2.at(w01) > c.u2.at(w10));
  CHECK(rel.compare(TrajDist::dirac(w01), TrajDist::dirac(w10)) == CompareResult::Less);
  CHECK(rel.compare(TrajDist::dirac(w11), TrajDist::dirac(w00)) == CompareResult::Less);
  // Mixtures tie on u1, split on u2.
  TrajDist a = mix(rat(1, 2), TrajDist::dirac(w11), TrajDist::dirac(w10));
  TrajDist b = TrajDist::dirac(w00);  // u1 = 1 on both sides
  CHECK(rel.compare(a, b) == CompareResult::Greater);
}

TEST_CASE("lexicographic construction requires a genuine tie-break") {
  Trajectory w0 = hist({0, 0, 0});
  Trajectory w1 = hist({0, 1, 0});
  std::map<Trajectory, Rational> flat{{w0, rat(1)}, {w1, rat(1)}};
  std::map<Trajectory, Rational> distinct{{w0, rat(1)}, {w1, rat(2)}};
  std::map<Trajectory, Rational> other{{w0, rat(0)}, {w1, rat(5)}};
  // Constant primary utility.
  CHECK_THROWS_AS(lexicographic_relation(flat, other), ContractError);
  // No tie at all, so the secondary never engages.
  CHECK_THROWS_AS(lexicographic_relation(distinct, other), ContractError);
  // Mismatched domains.
  std::map<Trajectory, Rational> small{{w0, rat(1)}};
  CHECK_THROWS_AS(lexicographic_relation(distinct, small), ContractError);
}

TEST_CASE("counterexample metric flips sign outside the pivot cylinder") {
  CounterexampleCase c = counterexample_case();
  TrajDist inside = TrajDist::dirac(c.demo_w1);   // one a1 play, inside cylinder
  TrajDist inside0 = TrajDist::dirac(c.demo_w2);  // no a1 plays, inside cylinder
  TrajDist outside = TrajDist::dirac(c.demo_w3);  // outside: starts at o1
  CHECK(c.metric(inside) == rat(1));
  CHECK(c.metric(inside0) == rat(0));
  CHECK(c.metric(outside) == rat(0));
  CHECK(c.metric(mix(rat(1, 2), inside, outside)) == rat(-1, 2));
  CHECK(c.relation.compare(inside, inside0) == CompareResult::Greater);
  // The documented consistency violation: mixing with demo_w3 reverses order.
  TrajDist ma = mix(rat(1, 2), inside, outside);
  TrajDist mb = mix(rat(1, 2), inside0, outside);
  CHECK(c.relation.compare(ma, mb) == CompareResult::Less);
}
