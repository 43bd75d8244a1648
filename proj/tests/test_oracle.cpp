#include "minent/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "minent/localopt.hpp"
#include "minent/sampling.hpp"

using namespace minent;

namespace {

SortedProbVector random_sorted(std::size_t n, Rng& rng) {
  return sort_desc(sample_simplex(n, rng));
}

bool close_matrix(const Coupling& a, const std::vector<double>& b, double tol) {
  for (std::size_t i = 0; i < b.size(); ++i)
    if (std::abs(a.data()[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("enumerate_vertices n=2") {
  auto vs = enumerate_vertices(ProbVector({0.75, 0.25}), ProbVector({0.6, 0.4}));
  REQUIRE(vs.vertices.size() == 2);
  bool saw_a = false, saw_b = false;
  for (const auto& v : vs.vertices) {
    if (close_matrix(v, {0.6, 0.15, 0.0, 0.25}, 1e-12)) saw_a = true;
    if (close_matrix(v, {0.35, 0.4, 0.25, 0.0}, 1e-12)) saw_b = true;
  }
  CHECK(saw_a);
  CHECK(saw_b);
}

TEST_CASE("enumerate_vertices degenerate and uniform") {
  auto vs1 = enumerate_vertices(ProbVector({1.0, 0.0, 0.0}),
                                ProbVector({0.5, 0.3, 0.2}));
  REQUIRE(vs1.vertices.size() == 1);
  CHECK(close_matrix(vs1.vertices[0],
                     {0.5, 0.3, 0.2, 0, 0, 0, 0, 0, 0}, 1e-12));

  auto vs2 = enumerate_vertices(ProbVector({0.5, 0.5}), ProbVector({0.5, 0.5}));
  REQUIRE(vs2.vertices.size() == 2);
  CHECK(close_matrix(vs2.vertices[0], {0.0, 0.5, 0.5, 0.0}, 1e-12));
  CHECK(close_matrix(vs2.vertices[1], {0.5, 0.0, 0.0, 0.5}, 1e-12));

  // p = q = uniform(n): the n! scaled permutation matrices
  for (std::size_t n : {3, 4}) {
    std::vector<double> u(n, 1.0 / double(n));
    auto vs = enumerate_vertices(ProbVector(u), ProbVector(u));
    std::size_t fact = 1;
    for (std::size_t k = 2; k <= n; ++k) fact *= k;
    CHECK(vs.vertices.size() == fact);
  }

  CHECK_THROWS_AS(enumerate_vertices(ProbVector(std::vector<double>(7, 1.0 / 7)),
                                     ProbVector(std::vector<double>(7, 1.0 / 7))),
                  SizeLimitError);
}

TEST_CASE("vertex set invariants on random instances") {
  Rng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + rng() % 3;
    auto p = sample_simplex(n, rng), q = sample_simplex(n, rng);
    auto vs = enumerate_vertices(p, q);
    for (const auto& v : vs.vertices) {
      auto [r, c] = marginals(v);
      std::size_t support = 0;
      for (double x : v.data())
        if (x > 1e-9) ++support;
      CHECK(support <= 2 * n - 1);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(r[i] == doctest::Approx(p[i]).epsilon(1e-10));
        CHECK(c[i] == doctest::Approx(q[i]).epsilon(1e-10));
      }
    }
    // pairwise distinct at 1e-9
    for (std::size_t a = 0; a < vs.vertices.size(); ++a)
      for (std::size_t b = a + 1; b < vs.vertices.size(); ++b)
        CHECK_FALSE(close_matrix(vs.vertices[a], vs.vertices[b].data(), 1e-9));
  }
}

TEST_CASE("oracle_min") {
  auto [c1, h1] = oracle_min(ProbVector({0.75, 0.25}), ProbVector({0.6, 0.4}));
  CHECK(close_matrix(c1, {0.6, 0.15, 0.0, 0.25}, 1e-12));
  CHECK(h1.value == doctest::Approx(1.3527).epsilon(1e-4));

  auto [c2, h2] = oracle_min(ProbVector({1.0, 0.0, 0.0}),
                             ProbVector({0.5, 0.3, 0.2}));
  CHECK(h2.value == doctest::Approx(entropy(ProbVector({0.5, 0.3, 0.2})).value)
                        .epsilon(1e-12));

  ProbVector p({0.5, 0.3, 0.2});
  auto [c3, h3] = oracle_min(p, p);
  CHECK(h3.value == doctest::Approx(entropy(p).value).epsilon(1e-12));
  CHECK(close_matrix(c3, {0.5, 0, 0, 0, 0.3, 0, 0, 0, 0.2}, 1e-12));
}

TEST_CASE("oracle_min dominates every vertex") {
  Rng rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + rng() % 4;
    auto p = sample_simplex(n, rng), q = sample_simplex(n, rng);
    auto vs = enumerate_vertices(p, q);
    auto [mc, mh] = oracle_min(vs);
    for (const auto& v : vs.vertices)
      CHECK(joint_entropy(v).value >= mh.value - 1e-12);
  }
}

TEST_CASE("verify_main_theorem") {
  Rng rng(107);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + rng() % 3;  // 2..4
    auto p = random_sorted(n, rng), q = random_sorted(n, rng);
    auto rep = verify_main_theorem(p, q);
    CHECK(rep.order_preserving_ok);
    CHECK(rep.sandwich_ok);
    CHECK(rep.witness_permutations.has_value());
    CHECK(rep.min_entropy <= rep.max_entropy_bound + 1e-10);
  }

  // n=2: minimizer matches the closed form up to equivalence
  std::uniform_real_distribution<double> uni(0.5, 0.999);
  for (int trial = 0; trial < 50; ++trial) {
    double a = uni(rng), b = uni(rng);
    double p = std::max(a, b), q = std::min(a, b);
    auto rep = verify_main_theorem(sort_desc(ProbVector({p, 1 - p})),
                                   sort_desc(ProbVector({q, 1 - q})));
    auto [hat, hmin] = min_entropy_2x2(p, q);
    CHECK(rep.min_entropy == doctest::Approx(hmin.value).epsilon(1e-10));
  }

  // p = q: diag(p) is the minimizer, upper triangular outright
  ProbVector pp({0.5, 0.3, 0.2});
  auto rep = verify_main_theorem(sort_desc(pp), sort_desc(pp));
  CHECK(rep.order_preserving_ok);
  CHECK(is_upper_triangular(rep.min_coupling, 1e-9));
  CHECK(rep.min_entropy == doctest::Approx(entropy(pp).value).epsilon(1e-10));
}

TEST_CASE("verify_sandwich") {
  // p = q: meet = p and min = H(p), tight at the lower end
  ProbVector pp({0.5, 0.3, 0.2});
  auto s1 = verify_sandwich(sort_desc(pp), sort_desc(pp));
  CHECK(s1.lower_ok);
  CHECK(s1.upper_ok);
  CHECK(s1.meet_entropy == doctest::Approx(entropy(pp).value).epsilon(1e-12));
  CHECK(s1.min_entropy == doctest::Approx(s1.meet_entropy).epsilon(1e-10));

  auto s2 = verify_sandwich(sort_desc(ProbVector({0.75, 0.25})),
                            sort_desc(ProbVector({0.6, 0.4})));
  CHECK(s2.lower_ok);
  CHECK(s2.upper_ok);
  CHECK(s2.meet_entropy == doctest::Approx(0.9710).epsilon(1e-4));
  CHECK(s2.min_entropy == doctest::Approx(1.3527).epsilon(1e-4));

  Rng rng(109);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + rng() % 4;  // 2..5
    auto s = verify_sandwich(random_sorted(n, rng), random_sorted(n, rng));
    CHECK(s.lower_ok);
    CHECK(s.upper_ok);
  }
}

TEST_CASE("verify_independent_max") {
  CHECK(verify_independent_max(ProbVector({0.5, 0.5}), ProbVector({0.5, 0.5}),
                               50, 1));
  Rng rng(113);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + rng() % 4;
    auto p = sample_simplex(n, rng), q = sample_simplex(n, rng);
    CHECK(verify_independent_max(p, q, 20, rng()));
  }
}

TEST_CASE("descent is consistent with the oracle") {
  Rng rng(127);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + rng() % 3;
    auto p = random_sorted(n, rng).to_prob();
    auto q = random_sorted(n, rng).to_prob();
    auto vs = enumerate_vertices(p, q);
    auto [mc, mh] = oracle_min(vs);
    for (const auto& v : vs.vertices) {
      auto [f, t] = descend(v);
      CHECK(joint_entropy(f).value >= mh.value - 1e-9);
    }
    auto [fm, tm] = descend(mc);
    CHECK(joint_entropy(fm).value == doctest::Approx(mh.value).epsilon(1e-10));
  }
}

TEST_CASE("restriction to order-preserving vertices keeps the minimum") {
  Rng rng(131);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + rng() % 3;
    auto p = random_sorted(n, rng).to_prob();
    auto q = random_sorted(n, rng).to_prob();
    auto vs = enumerate_vertices(p, q);
    auto [mc, mh] = oracle_min(vs);
    double restricted = 1e300;
    for (const auto& v : vs.vertices)
      if (find_order_preserving_equivalent(v))
        restricted = std::min(restricted, joint_entropy(v).value);
    CHECK(restricted == doctest::Approx(mh.value).epsilon(1e-9));
  }
}
