#pragma once

#include <cstdint>
#include <random>

#include "minent/coupling.hpp"
#include "minent/oracle.hpp"
#include "minent/probvec.hpp"

namespace minent {

using Rng = std::mt19937_64;

// Flat-Dirichlet simplex point: normalized exponentials of uniforms.
ProbVector sample_simplex(std::size_t n, Rng& rng);

// A random transportation-polytope vertex: the northwest-corner rule on
// uniformly permuted marginals, mapped back to the original labels.
Coupling random_vertex(const ProbVector& p, const ProbVector& q, Rng& rng);

// Random convex combination of the enumerated vertices (Dirichlet weights).
Coupling random_convex_combination(const VertexSet& vs, Rng& rng);

}  // namespace minent
