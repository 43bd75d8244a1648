#include "minent/probvec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace minent {

double log_b(double x, LogBase base) {
  return base == LogBase::Two ? std::log2(x) : std::log(x);
}

double xlogx(double x, LogBase base) {
  if (x == 0.0) return 0.0;
  return x * log_b(x, base);
}

namespace {

void validate_mass(const std::vector<double>& v) {
  if (v.size() < 2) throw std::invalid_argument("distribution needs n >= 2");
  double mass = 0.0;
  for (double x : v) {
    if (x < 0.0) throw std::invalid_argument("negative probability entry");
    mass += x;
  }
  if (std::abs(mass - 1.0) > kTolMass)
    throw std::invalid_argument("probabilities do not sum to 1");
}

}  // namespace

ProbVector::ProbVector(std::vector<double> values) : v_(std::move(values)) {
  validate_mass(v_);
}

ProbVector ProbVector::renormalized(std::vector<double> values) {
  double mass = 0.0;
  for (double x : values) {
    if (x < 0.0) throw std::invalid_argument("negative probability entry");
    mass += x;
  }
  if (mass <= 0.0) throw std::invalid_argument("nonpositive total mass");
  for (double& x : values) x /= mass;
  return ProbVector(std::move(values));
}

SortedProbVector::SortedProbVector(const ProbVector& p) {
  const auto& v = p.values();
  perm_.resize(v.size());
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  std::stable_sort(perm_.begin(), perm_.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  v_.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) v_[i] = v[perm_[i]];
}

double entropy_terms(std::vector<double> terms, LogBase base) {
  std::sort(terms.begin(), terms.end());
  double h = 0.0;
  for (double t : terms) h -= xlogx(t, base);
  return h;
}

EntropyValue entropy(const ProbVector& p, LogBase base) {
  return {entropy_terms(p.values(), base), base};
}

EntropyValue entropy(const SortedProbVector& p, LogBase base) {
  return {entropy_terms(p.values(), base), base};
}

SortedProbVector sort_desc(const ProbVector& p) { return SortedProbVector(p); }

std::vector<double> cdf(const ProbVector& p) {
  std::vector<double> f(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    f[i] = acc;
  }
  return f;
}

std::vector<double> cdf(const SortedProbVector& p) { return cdf(p.to_prob()); }

ProbVector meet(const SortedProbVector& p, const SortedProbVector& q) {
  if (p.size() != q.size()) throw std::invalid_argument("size mismatch");
  auto fp = cdf(p);
  auto fq = cdf(q);
  std::vector<double> out(p.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double fi = std::min(fp[i], fq[i]);
    out[i] = std::max(fi - prev, 0.0);
    prev = fi;
  }
  return ProbVector(std::move(out));
}

double h_c(double x, double c, LogBase base) {
  if (c <= 0.0) throw std::invalid_argument("h_c requires c > 0");
  if (x < 0.0 || x > c) throw std::invalid_argument("h_c requires x in [0, c]");
  return xlogx(x, base) + xlogx(c - x, base);
}

HcIntervalMax h_c_interval_max(double a, double b, double c, LogBase base) {
  if (!(0.0 <= a && a <= b && b <= c))
    throw std::invalid_argument("interval not contained in [0, c]");
  if (a <= c - b) return {a, h_c(a, c, base)};
  return {b, h_c(b, c, base)};
}

}  // namespace minent
