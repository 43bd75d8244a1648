#include "minent/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace minent {

Coupling::Coupling(std::size_t n, std::vector<double> row_major)
    : n_(n), m_(std::move(row_major)) {
  if (n_ < 2) throw std::invalid_argument("coupling needs n >= 2");
  if (m_.size() != n_ * n_) throw std::invalid_argument("matrix size mismatch");
  double mass = 0.0;
  for (double x : m_) {
    if (x < 0.0) throw std::invalid_argument("negative coupling entry");
    mass += x;
  }
  if (std::abs(mass - 1.0) > kTolMass)
    throw std::invalid_argument("coupling mass is not 1");
}

std::pair<ProbVector, ProbVector> marginals(const Coupling& P) {
  const std::size_t n = P.size();
  std::vector<double> r(n, 0.0), c(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      r[i] += P(i, j);
      c[j] += P(i, j);
    }
  return {ProbVector(std::move(r)), ProbVector(std::move(c))};
}

EntropyValue joint_entropy(const Coupling& P, LogBase base) {
  return {entropy_terms(P.data(), base), base};
}

double mutual_information(const Coupling& P, LogBase base) {
  const std::size_t n = P.size();
  auto [p, q] = marginals(P);
  double direct = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double v = P(i, j);
      if (v == 0.0) continue;
      if (p[i] == 0.0 || q[j] == 0.0)
        throw std::invalid_argument(
            "inconsistent coupling: positive cell with zero marginal");
      direct += v * log_b(v / (p[i] * q[j]), base);
    }
  double via_entropies = entropy(p, base).value + entropy(q, base).value -
                         joint_entropy(P, base).value;
  if (std::abs(direct - via_entropies) > 1e-10)
    throw std::logic_error("mutual information routes disagree");
  return direct;
}

Coupling independent(const ProbVector& p, const ProbVector& q) {
  if (p.size() != q.size()) throw std::invalid_argument("size mismatch");
  const std::size_t n = p.size();
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = p[i] * q[j];
  return Coupling(n, std::move(m));
}

Coupling nw_corner(const ProbVector& p, const ProbVector& q) {
  if (p.size() != q.size()) throw std::invalid_argument("size mismatch");
  const std::size_t n = p.size();
  std::vector<double> m(n * n, 0.0);
  double rp = p[0], cq = q[0];
  std::size_t i = 0, j = 0;
  while (i < n && j < n) {
    double b = std::min(rp, cq);
    m[i * n + j] = b;
    rp -= b;
    cq -= b;
    if (rp <= cq) {  // row exhausts first on ties
      ++i;
      if (i < n) rp = p[i];
    } else {
      ++j;
      if (j < n) cq = q[j];
    }
  }
  return Coupling(n, std::move(m));
}

Coupling order_preserving_coupling(const SortedProbVector& p,
                                   const SortedProbVector& q) {
  std::vector<double> asc(q.values().rbegin(), q.values().rend());
  return nw_corner(p.to_prob(), ProbVector(std::move(asc)));
}

Coupling swap_rows(const Coupling& P, std::size_t k, std::size_t l) {
  const std::size_t n = P.size();
  if (k >= n || l >= n) throw std::out_of_range("row index out of range");
  std::vector<double> m = P.data();
  for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[l * n + j]);
  return Coupling(n, std::move(m));
}

Coupling swap_cols(const Coupling& P, std::size_t k, std::size_t l) {
  const std::size_t n = P.size();
  if (k >= n || l >= n) throw std::out_of_range("column index out of range");
  std::vector<double> m = P.data();
  for (std::size_t i = 0; i < n; ++i) std::swap(m[i * n + k], m[i * n + l]);
  return Coupling(n, std::move(m));
}

bool is_upper_triangular(const Coupling& P, double tol) {
  const std::size_t n = P.size();
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (P(i, j) >= tol) return false;
  return true;
}

namespace {

// All permutations sorting v descending, in lexicographic order. The
// stable descending sort is the lexicographic minimum; the rest permute
// indices within tie groups.
std::vector<std::vector<std::size_t>> sorting_perms(
    const std::vector<double>& v, double tie_tol = 1e-12) {
  const std::size_t n = v.size();
  std::vector<std::size_t> base(n);
  std::iota(base.begin(), base.end(), std::size_t{0});
  std::stable_sort(base.begin(), base.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });

  // tie group boundaries as [start, end) runs over base
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i == n || std::abs(v[base[i]] - v[base[start]]) > tie_tol) {
      groups.emplace_back(start, i);
      start = i;
    }
  }

  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur = base;
  while (true) {
    out.push_back(cur);
    // odometer: advance the last group that still has a next permutation
    std::size_t g = groups.size();
    while (g > 0) {
      auto [s, e] = groups[g - 1];
      if (std::next_permutation(cur.begin() + s, cur.begin() + e)) break;
      --g;
    }
    if (g == 0) break;
  }
  return out;
}

bool upper_triangular_under(const Coupling& P,
                            const std::vector<std::size_t>& rp,
                            const std::vector<std::size_t>& cp, double tol) {
  const std::size_t n = P.size();
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (P(rp[i], cp[j]) >= tol) return false;
  return true;
}

// Complete search over all permutation pairs: build the permuted matrix
// position by position. Placing column j at position k is legal iff its
// support lies within the rows placed at positions 0..k, so the state is
// just the pair of used-row / used-column bitmasks; dead states are
// memoized. Fills rp/cp with a witness on success.
class TriangularizeSearch {
 public:
  TriangularizeSearch(const Coupling& P, double tol)
      : n_(P.size()), col_support_(n_, 0) {
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < n_; ++i)
        if (P(i, j) >= tol) col_support_[j] |= std::uint32_t{1} << i;
  }

  bool run(std::vector<std::size_t>& rp, std::vector<std::size_t>& cp) {
    rp.assign(n_, 0);
    cp.assign(n_, 0);
    return place(0, 0, 0, rp, cp);
  }

 private:
  bool place(std::uint32_t rows, std::uint32_t cols, std::size_t k,
             std::vector<std::size_t>& rp, std::vector<std::size_t>& cp) {
    if (k == n_) return true;
    std::uint64_t key = (std::uint64_t(rows) << 32) | cols;
    if (dead_.count(key)) return false;
    for (std::size_t i = 0; i < n_; ++i) {
      if (rows & (std::uint32_t{1} << i)) continue;
      std::uint32_t below = rows | (std::uint32_t{1} << i);
      for (std::size_t j = 0; j < n_; ++j) {
        if (cols & (std::uint32_t{1} << j)) continue;
        if (col_support_[j] & ~below) continue;
        rp[k] = i;
        cp[k] = j;
        if (place(below, cols | (std::uint32_t{1} << j), k + 1, rp, cp))
          return true;
      }
    }
    dead_.insert(key);
    return false;
  }

  std::size_t n_;
  std::vector<std::uint32_t> col_support_;
  std::unordered_set<std::uint64_t> dead_;
};

}  // namespace

std::optional<PermutationPair> find_order_preserving_equivalent(
    const Coupling& P, double tol) {
  // fast path: permutations sorting both marginals descending; when one of
  // these works the witness is the canonical sorted-marginal form
  auto [r, c] = marginals(P);
  auto row_perms = sorting_perms(r.values());
  auto col_perms = sorting_perms(c.values());
  for (const auto& rp : row_perms)
    for (const auto& cp : col_perms)
      if (upper_triangular_under(P, rp, cp, tol)) return PermutationPair{rp, cp};

  // general case: a matrix can be upper-triangularizable even though no
  // marginal-sorting pair works (e.g. when the triangular form has an
  // ascending column marginal), so fall back to the full search
  if (P.size() > 32) throw std::invalid_argument("matrix too large");
  TriangularizeSearch search(P, tol);
  std::vector<std::size_t> rp, cp;
  if (search.run(rp, cp)) return PermutationPair{std::move(rp), std::move(cp)};
  return std::nullopt;
}

}  // namespace minent
