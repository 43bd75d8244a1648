#include "minent/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "minent/sampling.hpp"

namespace minent {

namespace {

constexpr double kDedupTol = 1e-9;

bool entrywise_close(const std::vector<double>& a, const std::vector<double>& b,
                     double tol) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace

VertexSet enumerate_vertices(const ProbVector& p, const ProbVector& q,
                             std::size_t n_limit) {
  const std::size_t n = p.size();
  if (q.size() != n) throw std::invalid_argument("size mismatch");
  if (n > n_limit) throw SizeLimitError("marginal size exceeds oracle limit");

  // Every vertex is a basic solution: its support is cycle-free, hence
  // contained in a spanning tree of the complete bipartite graph on rows
  // and columns. Enumerate all n^(2n-2) spanning trees (each tree rooted
  // at row 0 corresponds to exactly one choice of a parent row for every
  // column and a parent column for every row != 0 that leaves no cycle),
  // solve each by leaf elimination, and keep the nonnegative solutions.
  //
  // Note the northwest-corner rule over permuted marginals does NOT reach
  // every vertex: its supports are monotone staircases, whose rows form a
  // path under the shares-a-column relation, while a vertex support may
  // branch (one row adjacent to three single-cell rows, say).
  std::map<std::vector<double>, bool> seen;
  const std::size_t m = 2 * n;  // node k: row k if k < n, else column k - n
  std::vector<std::size_t> parent(m, 0), nchild(m, 0), stack(m, 0);
  std::vector<double> resid(m, 0.0);
  std::vector<double> x(n * n, 0.0);
  std::vector<std::size_t> digits(m - 1, 0);  // odometer, base n

  while (true) {
    // quick cycle filter: any cycle alternates rows and columns, so it
    // shows up in the row -> parent column -> its parent row map; an
    // acyclic walk visits distinct rows and reaches row 0 within n steps
    bool acyclic = true;
    for (std::size_t i = 1; i < n && acyclic; ++i) {
      std::size_t j = i, steps = 0;
      while (j != 0) {
        if (++steps > n) {
          acyclic = false;
          break;
        }
        j = digits[digits[n + j - 1]];
      }
    }
    if (!acyclic) {
      std::size_t d = 0;
      while (d < digits.size() && ++digits[d] == n) digits[d++] = 0;
      if (d == digits.size()) break;
      continue;
    }

    for (std::size_t j = 0; j < n; ++j) parent[n + j] = digits[j];
    for (std::size_t i = 1; i < n; ++i) parent[i] = n + digits[n + i - 1];

    std::fill(nchild.begin(), nchild.end(), std::size_t{0});
    for (std::size_t node = 1; node < m; ++node) ++nchild[parent[node]];
    for (std::size_t i = 0; i < n; ++i) {
      resid[i] = p[i];
      resid[n + i] = q[i];
    }

    // strip leaves; acyclic iff all m-1 non-root nodes get processed
    std::size_t top = 0, processed = 0;
    for (std::size_t node = 1; node < m; ++node)
      if (nchild[node] == 0) stack[top++] = node;
    std::fill(x.begin(), x.end(), 0.0);
    bool feasible = true;
    while (top > 0) {
      std::size_t node = stack[--top];
      ++processed;
      double v = resid[node];
      if (v < -1e-12) {
        feasible = false;
        break;
      }
      if (v < 0.0) v = 0.0;
      std::size_t par = parent[node];
      std::size_t row = node < n ? node : par;
      std::size_t col = node < n ? parent[node] - n : node - n;
      x[row * n + col] = v;
      resid[par] -= v;
      if (--nchild[par] == 0 && par != 0) stack[top++] = par;
    }
    if (feasible && processed == m - 1) seen.emplace(x, true);

    std::size_t d = 0;
    while (d < digits.size() && ++digits[d] == n) digits[d++] = 0;
    if (d == digits.size()) break;
  }

  // exact dedup done by the map; now a tolerance pass over the sorted
  // list (near-duplicates must agree on entry 0 within the tolerance,
  // so a sliding window suffices)
  std::vector<std::vector<double>> mats;
  mats.reserve(seen.size());
  for (auto& [m, _] : seen) mats.push_back(m);
  std::vector<bool> dup(mats.size(), false);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (dup[i]) continue;
    for (std::size_t j = i + 1;
         j < mats.size() && mats[j][0] - mats[i][0] <= kDedupTol; ++j)
      if (!dup[j] && entrywise_close(mats[i], mats[j], kDedupTol)) dup[j] = true;
  }

  VertexSet vs{{}, p, q};
  for (std::size_t i = 0; i < mats.size(); ++i)
    if (!dup[i]) vs.vertices.emplace_back(n, std::move(mats[i]));
  return vs;
}

std::pair<Coupling, EntropyValue> oracle_min(const VertexSet& vs,
                                             LogBase base) {
  const Coupling* best = nullptr;
  double best_h = 0.0;
  for (const auto& v : vs.vertices) {
    double h = joint_entropy(v, base).value;
    if (!best || h < best_h) {
      best = &v;
      best_h = h;
    }
  }
  if (!best) throw std::logic_error("empty vertex set");
  return {*best, EntropyValue{best_h, base}};
}

std::pair<Coupling, EntropyValue> oracle_min(const ProbVector& p,
                                             const ProbVector& q,
                                             std::size_t n_limit,
                                             LogBase base) {
  return oracle_min(enumerate_vertices(p, q, n_limit), base);
}

OracleReport verify_main_theorem(const SortedProbVector& p,
                                 const SortedProbVector& q,
                                 std::size_t n_limit) {
  return verify_main_theorem(enumerate_vertices(p.to_prob(), q.to_prob(), n_limit),
                             p, q);
}

OracleReport verify_main_theorem(const VertexSet& vs,
                                 const SortedProbVector& p,
                                 const SortedProbVector& q) {
  auto [min_c, min_h] = oracle_min(vs, LogBase::Two);

  bool all_op = true;
  for (const auto& v : vs.vertices) {
    if (joint_entropy(v, LogBase::Two).value > min_h.value + 1e-9) continue;
    if (!find_order_preserving_equivalent(v)) {
      all_op = false;
      break;
    }
  }

  double meet_h = entropy(meet(p, q), LogBase::Two).value;
  double max_bound =
      entropy(p, LogBase::Two).value + entropy(q, LogBase::Two).value;
  bool sandwich = meet_h - 1e-9 <= min_h.value && min_h.value <= meet_h + 1.0 + 1e-9;

  return OracleReport{min_c,
                      min_h.value,
                      max_bound,
                      meet_h,
                      sandwich,
                      all_op,
                      find_order_preserving_equivalent(min_c)};
}

SandwichResult verify_sandwich(const SortedProbVector& p,
                               const SortedProbVector& q,
                               std::size_t n_limit) {
  auto [min_c, min_h] = oracle_min(p.to_prob(), q.to_prob(), n_limit, LogBase::Two);
  double meet_h = entropy(meet(p, q), LogBase::Two).value;
  return {meet_h - 1e-9 <= min_h.value, min_h.value <= meet_h + 1.0 + 1e-9,
          meet_h, min_h.value};
}

bool verify_independent_max(const ProbVector& p, const ProbVector& q,
                            std::size_t samples, std::uint64_t seed,
                            std::size_t n_limit, LogBase base) {
  auto vs = enumerate_vertices(p, q, n_limit);
  double bound = entropy(p, base).value + entropy(q, base).value;
  for (const auto& v : vs.vertices)
    if (joint_entropy(v, base).value > bound + 1e-10) return false;
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    Coupling mix = random_convex_combination(vs, rng);
    if (joint_entropy(mix, base).value > bound + 1e-10) return false;
  }
  double indep_h = joint_entropy(independent(p, q), base).value;
  return std::abs(indep_h - bound) <= 1e-10;
}

}  // namespace minent
