#include "minent/localopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace minent {

namespace {

constexpr double kZeroTol = 1e-12;  // membership threshold for I, J
constexpr double kPreSlack = 1e-12;

void require_nonneg(const TwoByTwo& a) {
  if (a.a11 < 0 || a.a12 < 0 || a.a21 < 0 || a.a22 < 0)
    throw std::invalid_argument("negative entry in 2x2 block");
}

TwoByTwo shift_to_diagonal(const TwoByTwo& a, double b) {
  return {a.a11 + b, a.a12 - b, a.a21 - b, a.a22 + b};
}

double matrix_entropy(const std::vector<double>& m, LogBase base) {
  return entropy_terms(m, base);
}

// zero out subtraction residue so cleared lines are exactly zero
double snap(double x) { return std::abs(x) < 1e-15 ? 0.0 : x; }

}  // namespace

double unnormalized_entropy(const std::vector<double>& a, LogBase base) {
  for (double x : a)
    if (x < 0.0) throw std::invalid_argument("negative entry");
  return -entropy_terms(a, base);
}

bool scaling_identity_check(const std::vector<double>& a, LogBase base,
                            double tol) {
  double c = 0.0;
  for (double x : a) {
    if (x < 0.0) throw std::invalid_argument("negative entry");
    c += x;
  }
  if (c <= 0.0) throw std::invalid_argument("nonpositive total mass");
  std::vector<double> scaled = a;
  for (double& x : scaled) x /= c;
  double lhs = unnormalized_entropy(a, base);
  double rhs = c * unnormalized_entropy(scaled, base) + c * log_b(c, base);
  return std::abs(lhs - rhs) <= tol;
}

std::pair<TwoByTwo, double> lemma1_transform(const TwoByTwo& a) {
  require_nonneg(a);
  if (std::max(a.a11, a.a22) < std::max(a.a12, a.a21) - kPreSlack)
    throw std::domain_error("lemma1 requires a11 v a22 >= a12 v a21");
  double b = std::min(a.a12, a.a21);
  return {shift_to_diagonal(a, b), b};
}

std::pair<TwoByTwo, double> lemma2_transform(const TwoByTwo& a) {
  require_nonneg(a);
  double r1 = a.a11 + a.a12, r2 = a.a21 + a.a22;
  double c1 = a.a11 + a.a21, c2 = a.a12 + a.a22;
  if (r1 < r2 - kPreSlack || c1 < c2 - kPreSlack || r1 < c1 - kPreSlack)
    throw std::domain_error("lemma2 dominance conditions violated");
  double b = std::min(a.a12, a.a21);
  return {shift_to_diagonal(a, b), b};
}

Coupling submatrix_update(const Coupling& P, std::size_t i, std::size_t k,
                          std::size_t j, std::size_t l, LemmaKind which) {
  const std::size_t n = P.size();
  if (i >= k || j >= l) throw std::invalid_argument("need i < k and j < l");
  if (k >= n || l >= n) throw std::out_of_range("block index out of range");
  TwoByTwo block{P(i, j), P(i, l), P(k, j), P(k, l)};
  auto [upd, b] =
      which == LemmaKind::Lemma1 ? lemma1_transform(block) : lemma2_transform(block);
  std::vector<double> m = P.data();
  m[i * n + j] = snap(upd.a11);
  m[i * n + l] = snap(upd.a12);
  m[k * n + j] = snap(upd.a21);
  m[k * n + l] = snap(upd.a22);
  return Coupling(n, std::move(m));
}

std::pair<Coupling, EntropyValue> min_entropy_2x2(double p, double q,
                                                  LogBase base) {
  if (!(q >= 0.5 - kPreSlack && p >= q - kPreSlack && p <= 1.0 + kPreSlack))
    throw std::invalid_argument("min_entropy_2x2 requires 1 >= p >= q >= 0.5");
  double pq = std::max(p - q, 0.0);
  Coupling hat(2, {q, pq, 0.0, std::max(1.0 - p, 0.0)});
  double h = -(xlogx(q, base) + xlogx(1.0 - p, base) + xlogx(pq, base));
  return {hat, EntropyValue{h, base}};
}

Coupling replay(const Coupling& initial,
                const std::vector<TransformStep>& steps) {
  const std::size_t n = initial.size();
  std::vector<double> m = initial.data();
  for (const auto& s : steps) {
    switch (s.kind) {
      case StepKind::RowSwap:
        for (std::size_t j = 0; j < n; ++j)
          std::swap(m[s.indices[0] * n + j], m[s.indices[1] * n + j]);
        break;
      case StepKind::ColSwap:
        for (std::size_t i = 0; i < n; ++i)
          std::swap(m[i * n + s.indices[0]], m[i * n + s.indices[1]]);
        break;
      default: {
        auto [r1, c1, r2, c2] = s.indices;
        m[r1 * n + c1] = snap(m[r1 * n + c1] + s.shifted_mass);
        m[r2 * n + c2] = snap(m[r2 * n + c2] + s.shifted_mass);
        m[r1 * n + c2] = snap(m[r1 * n + c2] - s.shifted_mass);
        m[r2 * n + c1] = snap(m[r2 * n + c1] - s.shifted_mass);
      }
    }
  }
  return Coupling(n, std::move(m));
}

namespace {

// Clears the corner line of the window [lo, hi) in place. Substeps pair
// the smallest active column entry with the smallest active row entry and
// shift b = the smaller of the two minima onto the diagonal; |I| + |J|
// drops each time, so at most 2(k-1) substeps for a k-wide window.
void clear_line_block(std::vector<double>& m, std::size_t n, std::size_t lo,
                      std::size_t hi, Corner corner, LogBase base,
                      std::vector<TransformStep>& steps) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return m[i * n + j]; };
  const std::size_t k = hi - lo;
  std::size_t max_steps = 2 * (k - 1);
  for (std::size_t iter = 0;; ++iter) {
    if (iter > max_steps)
      throw std::logic_error("clear_line exceeded its 2(n-1) step bound");

    std::size_t i0 = n, j0 = n;
    double col_min = std::numeric_limits<double>::infinity();
    double row_min = std::numeric_limits<double>::infinity();
    if (corner == Corner::TopLeft) {
      for (std::size_t i = lo + 1; i < hi; ++i)
        if (at(i, lo) > kZeroTol && at(i, lo) < col_min) {
          col_min = at(i, lo);
          i0 = i;
        }
      if (i0 == n) break;  // first column cleared
      for (std::size_t j = lo + 1; j < hi; ++j)
        if (at(lo, j) > kZeroTol && at(lo, j) < row_min) {
          row_min = at(lo, j);
          j0 = j;
        }
      if (j0 == n)
        throw std::logic_error("clear_line: empty row set with mass left");
    } else {
      const std::size_t last = hi - 1;
      for (std::size_t j = lo; j < last; ++j)
        if (at(last, j) > kZeroTol && at(last, j) < row_min) {
          row_min = at(last, j);
          j0 = j;
        }
      if (j0 == n) break;  // last row cleared
      for (std::size_t i = lo; i < last; ++i)
        if (at(i, last) > kZeroTol && at(i, last) < col_min) {
          col_min = at(i, last);
          i0 = i;
        }
      if (i0 == n)
        throw std::logic_error("clear_line: empty column set with mass left");
    }

    double b = std::min(col_min, row_min);
    // diagonal cells of the 2x2 block: corner and (i0, j0)
    std::size_t r1, c1, r2, c2;
    if (corner == Corner::TopLeft) {
      r1 = lo; c1 = lo; r2 = i0; c2 = j0;
    } else {
      r1 = i0; c1 = j0; r2 = hi - 1; c2 = hi - 1;
    }
    double corner_val = corner == Corner::TopLeft ? at(r1, c1) : at(r2, c2);
    if (std::max(corner_val, corner == Corner::TopLeft ? at(r2, c2) : at(r1, c1)) <
        std::max(at(r1, c2), at(r2, c1)) - kPreSlack)
      throw std::logic_error("clear_line substep violates the lemma precondition");

    double before = matrix_entropy(m, base);
    at(r1, c1) = snap(at(r1, c1) + b);
    at(r2, c2) = snap(at(r2, c2) + b);
    at(r1, c2) = snap(at(r1, c2) - b);
    at(r2, c1) = snap(at(r2, c1) - b);
    double after = matrix_entropy(m, base);
    steps.push_back({StepKind::LineClearSubstep, {r1, c1, r2, c2}, b, before, after});
  }
}

void swap_lines(std::vector<double>& m, std::size_t n, StepKind kind,
                std::size_t a, std::size_t b, LogBase base,
                std::vector<TransformStep>& steps) {
  if (a == b) return;
  if (kind == StepKind::RowSwap)
    for (std::size_t j = 0; j < n; ++j) std::swap(m[a * n + j], m[b * n + j]);
  else
    for (std::size_t i = 0; i < n; ++i) std::swap(m[i * n + a], m[i * n + b]);
  double h = matrix_entropy(m, base);
  steps.push_back({kind, {a, b, 0, 0}, 0.0, h, h});
}

}  // namespace

std::pair<Coupling, std::vector<TransformStep>> clear_line(const Coupling& A,
                                                           Corner corner,
                                                           LogBase base) {
  const std::size_t n = A.size();
  double max_entry = *std::max_element(A.data().begin(), A.data().end());
  double row_corner = 0.0, col_corner = 0.0;
  std::size_t c = corner == Corner::TopLeft ? 0 : n - 1;
  for (std::size_t j = 0; j < n; ++j) row_corner += A(c, j);
  for (std::size_t i = 0; i < n; ++i) col_corner += A(i, c);
  bool ok = corner == Corner::TopLeft
                ? (A(0, 0) >= max_entry - kPreSlack && row_corner >= col_corner - kPreSlack)
                : (A(n - 1, n - 1) >= max_entry - kPreSlack &&
                   row_corner <= col_corner + kPreSlack);
  if (!ok) throw std::domain_error("clear_line corner precondition violated");

  std::vector<double> m = A.data();
  std::vector<TransformStep> steps;
  clear_line_block(m, n, 0, n, corner, base, steps);
  return {Coupling(n, std::move(m)), std::move(steps)};
}

std::pair<Coupling, DescentTrace> descend(const Coupling& P, LogBase base) {
  const std::size_t n = P.size();
  std::vector<double> m = P.data();
  std::vector<TransformStep> steps;

  // positions of the original rows/columns in the working copy, so the
  // accumulated permutation can be undone at the end (the final matrix
  // must carry the input marginals; triangularity holds up to the swaps
  // recorded in the trace)
  std::vector<std::size_t> row_of(n), col_of(n);
  for (std::size_t i = 0; i < n; ++i) row_of[i] = col_of[i] = i;
  auto do_swap = [&](StepKind kind, std::size_t a, std::size_t b) {
    swap_lines(m, n, kind, a, b, base, steps);
    if (a != b)
      std::swap(kind == StepKind::RowSwap ? row_of[a] : col_of[a],
                kind == StepKind::RowSwap ? row_of[b] : col_of[b]);
  };

  std::size_t lo = 0, hi = n;
  while (hi - lo >= 2) {
    // maximal entry of the active block, row-major tie break
    std::size_t bi = lo, bj = lo;
    double best = -1.0;
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = lo; j < hi; ++j)
        if (m[i * n + j] > best) {
          best = m[i * n + j];
          bi = i;
          bj = j;
        }
    double row_sum = 0.0, col_sum = 0.0;
    for (std::size_t j = lo; j < hi; ++j) row_sum += m[bi * n + j];
    for (std::size_t i = lo; i < hi; ++i) col_sum += m[i * n + bj];

    if (row_sum >= col_sum) {
      do_swap(StepKind::RowSwap, bi, lo);
      do_swap(StepKind::ColSwap, bj, lo);
      clear_line_block(m, n, lo, hi, Corner::TopLeft, base, steps);
      ++lo;
    } else {
      do_swap(StepKind::RowSwap, bi, hi - 1);
      do_swap(StepKind::ColSwap, bj, hi - 1);
      clear_line_block(m, n, lo, hi, Corner::BottomRight, base, steps);
      --hi;
    }
  }

  // undo the accumulated permutation (selection sort over positions)
  for (auto [kind, of] : {std::pair{StepKind::RowSwap, &row_of},
                          std::pair{StepKind::ColSwap, &col_of}})
    for (std::size_t i = 0; i < n; ++i) {
      if ((*of)[i] == i) continue;
      std::size_t t = i + 1;
      while ((*of)[t] != i) ++t;
      do_swap(kind, i, t);
    }

  Coupling final(n, std::move(m));
  return {final, DescentTrace{std::move(steps), P, final}};
}

}  // namespace minent
