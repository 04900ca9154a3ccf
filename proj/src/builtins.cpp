#include "dpp/builtins.hpp"

namespace dpp {

namespace {

Rational a1_count(const Trajectory& w) {
  Rational c(0);
  for (const auto& [a, o] : w.steps)
    if (a == 1) c += 1;
  return c;
}

History make_hist(ObsId o0, ActId a0, ObsId o1) {
  History h(o0);
  h.steps.emplace_back(a0, o1);
  return h;
}

Trajectory make_traj2(ObsId o0, ActId a0, ObsId o1, ActId a1, ObsId o2) {
  Trajectory w(o0);
  w.steps.emplace_back(a0, o1);
  w.steps.emplace_back(a1, o2);
  return w;
}

}  // namespace

CounterexampleCase counterexample_case() {
  Interface iface({"o0", "o1"}, {"a0", "a1"}, 2);
  std::vector<Dist<ObsId>::Entry> half{{0, Rational(1, 2)}, {1, Rational(1, 2)}};
  Environment env(Dist<ObsId>::dirac(0), {}, Dist<ObsId>::make(half));
  History pivot = make_hist(0, 0, 0);
  auto metric = [pivot](const TrajDist& d) {
    bool inside = true;
    for (const auto& [w, p] : d.entries())
      if (!w.has_prefix(pivot)) {
        inside = false;
        break;
      }
    Rational e(0);
    for (const auto& [w, p] : d.entries()) e += p * a1_count(w);
    return inside ? e : -e;
  };
  TrajRelation rel("performance", [metric](const TrajDist& a, const TrajDist& b) {
    return compare_values(metric(a), metric(b));
  });
  rel.set_value(metric, /*linear=*/false);
  return CounterexampleCase{std::move(iface), std::move(env), std::move(rel),
                            pivot, metric,
                            make_traj2(0, 0, 0, 1, 0),
                            make_traj2(0, 0, 0, 0, 0),
                            make_traj2(1, 0, 0, 0, 0)};
}

RiskCase risk_case() {
  Interface iface({"o0"}, {"a0", "a1"}, 2);
  Environment env(Dist<ObsId>::dirac(0), {}, Dist<ObsId>::dirac(0));
  Trajectory w00 = make_traj2(0, 0, 0, 0, 0);
  Trajectory w01 = make_traj2(0, 0, 0, 1, 0);
  Trajectory w10 = make_traj2(0, 1, 0, 0, 0);
  Trajectory w11 = make_traj2(0, 1, 0, 1, 0);
  std::map<Trajectory, Rational> u{
      {w00, Rational(1)}, {w01, Rational(2)}, {w10, Rational(3)}, {w11, Rational(4)}};
  Rational beta(-1);
  std::set<Trajectory> event{w11};
  TrajRelation rel = risk_relation(u, beta, event);
  return RiskCase{std::move(iface), std::move(env), std::move(rel),
                  std::move(u), beta, std::move(event), w00, w01, w11};
}

LexicographicCase lexicographic_case() {
  Interface iface({"o0"}, {"a0", "a1"}, 2);
  Environment env(Dist<ObsId>::dirac(0), {}, Dist<ObsId>::dirac(0));
  Trajectory w00 = make_traj2(0, 0, 0, 0, 0);
  Trajectory w01 = make_traj2(0, 0, 0, 1, 0);
  Trajectory w10 = make_traj2(0, 1, 0, 0, 0);
  Trajectory w11 = make_traj2(0, 1, 0, 1, 0);
  std::map<Trajectory, Rational> u1{
      {w00, Rational(1)}, {w01, Rational(1)}, {w10, Rational(2)}, {w11, Rational(0)}};
  std::map<Trajectory, Rational> u2{
      {w00, Rational(0)}, {w01, Rational(3)}, {w10, Rational(1)}, {w11, Rational(1)}};
  TrajRelation rel = lexicographic_relation(u1, u2);
  return LexicographicCase{std::move(iface), std::move(env), std::move(rel),
                           std::move(u1), std::move(u2)};
}

}  // namespace dpp
