#include "dpp/axioms.hpp"

namespace dpp {

std::string to_string(Axiom ax) {
  switch (ax) {
    case Axiom::Totality: return "totality";
    case Axiom::Transitivity: return "transitivity";
    case Axiom::Consistency: return "consistency";
    case Axiom::Convexity: return "convexity";
    case Axiom::Interpolation: return "interpolation";
  }
  return "totality";
}

Axiom axiom_from_string(const std::string& name, const std::string& where) {
  for (Axiom ax : all_axioms())
    if (to_string(ax) == name) return ax;
  throw ParseError(where, "unknown axiom \"" + name + "\"");
}

std::string to_string(AxiomVerdict v) {
  return v == AxiomVerdict::PassedOnTestset ? "passed-on-testset" : "refuted";
}

std::vector<TrajDist> build_testset(const Interface& iface, const Environment& env,
                                    const AttainableSets& sets,
                                    const TestsetSpec& spec) {
  return build_testset(sets.trajectories(), spec);
}

std::vector<TrajDist> build_testset(const std::vector<Trajectory>& omega,
                                    const TestsetSpec& spec) {
  std::vector<TrajDist> ts;
  if (omega.empty()) throw ContractError("no attainable trajectories");
  for (const Trajectory& w : omega) ts.push_back(TrajDist::dirac(w));
  std::size_t base = std::min<std::size_t>(omega.size(),
                                           static_cast<std::size_t>(spec.mixture_base));
  for (std::size_t i = 0; i < base; ++i)
    for (std::size_t j = i + 1; j < base; ++j)
      for (const Rational& alpha : spec.alphas)
        ts.push_back(mix(alpha, ts[i], ts[j]));
  Rng rng(spec.seed);
  for (int c = 0; c < spec.random_count; ++c)
    ts.push_back(random_dist(rng, omega));
  return ts;
}

}  // namespace dpp
