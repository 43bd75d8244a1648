#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "minent/coupling.hpp"
#include "minent/probvec.hpp"

namespace minent {

// A general nonnegative 2x2 matrix, not necessarily of mass 1.
struct TwoByTwo {
  double a11, a12, a21, a22;
};

// h(A) = sum a_ij log a_ij over a nonnegative matrix (entropy is -h).
double unnormalized_entropy(const std::vector<double>& a,
                            LogBase base = LogBase::Two);

// Checks h(A) == C h(A/C) + C log C, C the total mass.
bool scaling_identity_check(const std::vector<double>& a,
                            LogBase base = LogBase::Two, double tol = 1e-10);

// Mass shift toward the diagonal: b = a12 /\ a21, diagonal gains b,
// off-diagonal loses b. Requires a11 \/ a22 >= a12 \/ a21. Entropy does
// not increase; strictly decreases when b > 0.
std::pair<TwoByTwo, double> lemma1_transform(const TwoByTwo& a);

// Same construction under the dominance conditions row1 >= row2,
// col1 >= col2, row1 >= col1.
std::pair<TwoByTwo, double> lemma2_transform(const TwoByTwo& a);

enum class LemmaKind { Lemma1, Lemma2 };

// Applies the chosen transform to the 2x2 block at rows {i, k}, cols
// {j, l} of P. Marginals are preserved; entropy does not increase.
Coupling submatrix_update(const Coupling& P, std::size_t i, std::size_t k,
                          std::size_t j, std::size_t l, LemmaKind which);

// Closed-form minimum-entropy coupling for n = 2 with sorted marginals
// (p, 1-p), (q, 1-q), 1 >= p >= q >= 0.5: the matrix [[q, p-q], [0, 1-p]].
std::pair<Coupling, EntropyValue> min_entropy_2x2(double p, double q,
                                                  LogBase base = LogBase::Two);

enum class StepKind { Lemma1, Lemma2, RowSwap, ColSwap, LineClearSubstep };

// One recorded descent step. For lemma-type steps, indices = (r1, c1, r2,
// c2): cells (r1,c1) and (r2,c2) gain shifted_mass, cells (r1,c2) and
// (r2,c1) lose it. For swaps, indices[0..1] are the swapped lines.
struct TransformStep {
  StepKind kind;
  std::array<std::size_t, 4> indices;
  double shifted_mass;
  double entropy_before;
  double entropy_after;
};

struct DescentTrace {
  std::vector<TransformStep> steps;
  Coupling initial;
  Coupling final;
};

// Reapplies a step list to a matrix; used to audit traces.
Coupling replay(const Coupling& initial, const std::vector<TransformStep>& steps);

enum class Corner { TopLeft, BottomRight };

// Clears the first column into the (1,1) corner (resp. the last row into
// (n,n)) by at most 2(n-1) diagonal mass shifts. Requires the corner to
// be a maximal entry with row sum >= col sum (mirrored for BottomRight).
// Entropy never increases; all row and column sums are preserved.
std::pair<Coupling, std::vector<TransformStep>> clear_line(
    const Coupling& A, Corner corner, LogBase base = LogBase::Two);

// Full descent to an order-preserving coupling: repeatedly swap the
// maximal entry of the active block to a corner and clear its line,
// shrinking the block from n down to 2. The working permutations are
// undone at the end (with the undo swaps recorded), so the result keeps
// the input marginals and is upper triangular up to the recorded swaps;
// entropy <= the input's; the trace replays to the final matrix.
std::pair<Coupling, DescentTrace> descend(const Coupling& P,
                                          LogBase base = LogBase::Two);

}  // namespace minent
