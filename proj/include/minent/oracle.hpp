#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "minent/coupling.hpp"
#include "minent/probvec.hpp"

namespace minent {

inline constexpr std::size_t kDefaultOracleLimit = 6;

// Thrown when a marginal pair is too large for exhaustive enumeration.
struct SizeLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every extreme point of the transportation polytope C(p, q). Vertex
// supports are cycle-free, so each lies in a spanning tree of the
// complete bipartite row/column graph; all n^(2n-2) trees are solved by
// leaf elimination and the nonnegative solutions kept, deduplicated
// entrywise at 1e-9. Vertices are sorted lexicographically for
// deterministic reporting.
struct VertexSet {
  std::vector<Coupling> vertices;
  ProbVector p, q;
};

VertexSet enumerate_vertices(const ProbVector& p, const ProbVector& q,
                             std::size_t n_limit = kDefaultOracleLimit);

// Global minimum-entropy coupling by exhaustive vertex search (joint
// entropy is concave, so the minimum over the polytope is attained at a
// vertex). Ties broken by lexicographic matrix order.
std::pair<Coupling, EntropyValue> oracle_min(
    const VertexSet& vs, LogBase base = LogBase::Two);
std::pair<Coupling, EntropyValue> oracle_min(
    const ProbVector& p, const ProbVector& q,
    std::size_t n_limit = kDefaultOracleLimit, LogBase base = LogBase::Two);

struct OracleReport {
  Coupling min_coupling;
  double min_entropy;
  double max_entropy_bound;  // H(p) + H(q)
  double meet_entropy;       // H(p /\ q)
  bool sandwich_ok;
  bool order_preserving_ok;
  std::optional<PermutationPair> witness_permutations;
};

// Checks that every entropy-minimizing vertex (within 1e-9 of the
// minimum) admits an order-preserving equivalent, and evaluates the
// H(p /\ q) <= min <= H(p /\ q) + 1 sandwich (bits).
OracleReport verify_main_theorem(const SortedProbVector& p,
                                 const SortedProbVector& q,
                                 std::size_t n_limit = kDefaultOracleLimit);
// same, over an already-enumerated vertex set of (p, q)
OracleReport verify_main_theorem(const VertexSet& vs,
                                 const SortedProbVector& p,
                                 const SortedProbVector& q);

struct SandwichResult {
  bool lower_ok;
  bool upper_ok;
  double meet_entropy;
  double min_entropy;
};

// The sandwich bound in bits, slack 1e-9.
SandwichResult verify_sandwich(const SortedProbVector& p,
                               const SortedProbVector& q,
                               std::size_t n_limit = kDefaultOracleLimit);

// Checks joint entropy <= H(p) + H(q) + 1e-10 over all vertices and
// `samples` random convex combinations, with equality attained by the
// independent coupling.
bool verify_independent_max(const ProbVector& p, const ProbVector& q,
                            std::size_t samples, std::uint64_t seed,
                            std::size_t n_limit = kDefaultOracleLimit,
                            LogBase base = LogBase::Two);

}  // namespace minent
