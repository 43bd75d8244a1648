#include "minent/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace minent {

ProbVector sample_simplex(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> v(n);
  double mass = 0.0;
  for (double& x : v) {
    double u;
    do {
      u = uni(rng);
    } while (u <= 0.0);
    x = -std::log(u);
    mass += x;
  }
  for (double& x : v) x /= mass;
  return ProbVector(std::move(v));
}

Coupling random_vertex(const ProbVector& p, const ProbVector& q, Rng& rng) {
  if (p.size() != q.size()) throw std::invalid_argument("size mismatch");
  const std::size_t n = p.size();
  std::vector<std::size_t> sigma(n), tau(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  std::iota(tau.begin(), tau.end(), std::size_t{0});
  std::shuffle(sigma.begin(), sigma.end(), rng);
  std::shuffle(tau.begin(), tau.end(), rng);

  std::vector<double> ps(n), qs(n);
  for (std::size_t a = 0; a < n; ++a) ps[a] = p[sigma[a]];
  for (std::size_t b = 0; b < n; ++b) qs[b] = q[tau[b]];
  Coupling nw = nw_corner(ProbVector(ps), ProbVector(qs));

  std::vector<double> v(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) v[sigma[a] * n + tau[b]] = nw(a, b);
  return Coupling(n, std::move(v));
}

Coupling random_convex_combination(const VertexSet& vs, Rng& rng) {
  if (vs.vertices.empty()) throw std::invalid_argument("empty vertex set");
  if (vs.vertices.size() == 1) return vs.vertices.front();
  const std::size_t n = vs.vertices.front().size();
  ProbVector w = sample_simplex(vs.vertices.size(), rng);
  std::vector<double> m(n * n, 0.0);
  for (std::size_t k = 0; k < vs.vertices.size(); ++k) {
    const auto& d = vs.vertices[k].data();
    for (std::size_t e = 0; e < m.size(); ++e) m[e] += w[k] * d[e];
  }
  return Coupling(n, std::move(m));
}

}  // namespace minent
