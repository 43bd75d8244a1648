#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "minent/probvec.hpp"

namespace minent {

// An n x n joint distribution matrix. Entries are nonnegative and the
// total mass is 1 within kTolMass.
class Coupling {
 public:
  Coupling(std::size_t n, std::vector<double> row_major);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return m_[i * n_ + j];
  }
  const std::vector<double>& data() const { return m_; }

 private:
  std::size_t n_;
  std::vector<double> m_;
};

// Row permutation sigma and column permutation sigma' relating a coupling
// to an upper-triangular representative: permuted(i, j) = P(row_perm[i],
// col_perm[j]).
struct PermutationPair {
  std::vector<std::size_t> row_perm;
  std::vector<std::size_t> col_perm;
};

// (row sums, column sums)
std::pair<ProbVector, ProbVector> marginals(const Coupling& P);

// -sum_ij p_ij log p_ij, canonical accumulation order (exact under row and
// column exchanges).
EntropyValue joint_entropy(const Coupling& P, LogBase base = LogBase::Two);

// I(X,Y) = sum p(x,y) log(p(x,y) / p(x)p(y)), cross-checked against
// H(p) + H(q) - H(P) to 1e-10. Throws on an inconsistent coupling (a joint
// cell positive while its marginal vanishes) or route disagreement.
double mutual_information(const Coupling& P, LogBase base = LogBase::Two);

// Outer product p_i * q_j.
Coupling independent(const ProbVector& p, const ProbVector& q);

// Northwest-corner vertex: greedy fill from (1,1), assigning the minimum
// of the remaining row and column mass, advancing whichever line is
// exhausted (row first on ties). Marginals are (p, q); at most 2n-1
// nonzero cells.
Coupling nw_corner(const ProbVector& p, const ProbVector& q);

// Upper-triangular coupling of p with q reversed to ascending order, via
// the northwest-corner rule. Exists because F_p dominates the CDF of the
// ascending rearrangement of q.
Coupling order_preserving_coupling(const SortedProbVector& p,
                                   const SortedProbVector& q);

Coupling swap_rows(const Coupling& P, std::size_t k, std::size_t l);
Coupling swap_cols(const Coupling& P, std::size_t k, std::size_t l);

// True iff every entry strictly below the diagonal is < tol. Diagonal
// entries are unconstrained.
bool is_upper_triangular(const Coupling& P, double tol = 1e-12);

// Searches for a permutation pair (sigma, sigma') such that the permuted
// matrix is upper triangular. Pairs sorting both marginals descending are
// tried first (in lexicographic order), so the witness has sorted
// marginals whenever such a witness exists; otherwise every permutation
// pair is searched via a memoized placement recursion. Returns nullopt
// iff no pair works.
std::optional<PermutationPair> find_order_preserving_equivalent(
    const Coupling& P, double tol = 1e-9);

}  // namespace minent
