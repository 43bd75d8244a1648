#pragma once

#include <cstddef>
#include <vector>

namespace minent {

// Mass tolerance for "entries sum to 1".
inline constexpr double kTolMass = 1e-9;

enum class LogBase { Two, Nat };

// log in the requested base
double log_b(double x, LogBase base);

// x * log(x) with the convention 0 * log 0 = 0
double xlogx(double x, LogBase base);

struct EntropyValue {
  double value;
  LogBase base;
};

// A discrete probability distribution on {1..n}, n >= 2.
// Entries are nonnegative and sum to 1 within kTolMass.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> values);

  // Rescales to unit mass before validating. Throws if the mass is not
  // positive or an entry is negative.
  static ProbVector renormalized(std::vector<double> values);

  std::size_t size() const { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  const std::vector<double>& values() const { return v_; }

  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

 private:
  std::vector<double> v_;
};

// Canonical isoentropy representative: values sorted non-increasing.
// sorted()[i] == original[sort_perm()[i]]; the sort is stable, so equal
// entries keep their original relative order.
class SortedProbVector {
 public:
  explicit SortedProbVector(const ProbVector& p);

  std::size_t size() const { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  const std::vector<double>& values() const { return v_; }
  const std::vector<std::size_t>& sort_perm() const { return perm_; }

  ProbVector to_prob() const { return ProbVector(v_); }

 private:
  std::vector<double> v_;
  std::vector<std::size_t> perm_;
};

// Shannon entropy, -sum p_i log p_i. Terms are accumulated in canonical
// (ascending) order so the result is exactly permutation invariant.
EntropyValue entropy(const ProbVector& p, LogBase base = LogBase::Two);
EntropyValue entropy(const SortedProbVector& p, LogBase base = LogBase::Two);

// Entropy of a raw term list; no distribution validation. Same canonical
// accumulation order as entropy().
double entropy_terms(std::vector<double> terms, LogBase base);

SortedProbVector sort_desc(const ProbVector& p);

// Prefix sums F_p(i).
std::vector<double> cdf(const ProbVector& p);
std::vector<double> cdf(const SortedProbVector& p);

// The meet distribution p /\ q: the unique distribution whose CDF is the
// pointwise minimum of the two CDFs. Requires matching sizes.
ProbVector meet(const SortedProbVector& p, const SortedProbVector& q);

// h_c(x) = x log x + (c - x) log(c - x) on [0, c].
double h_c(double x, double c, LogBase base = LogBase::Two);

struct HcIntervalMax {
  double argmax;  // a or b
  double value;
};

// max of h_c over [a, b] subset of [0, c]; attained at an endpoint,
// h_c(a) when a <= c - b, h_c(b) otherwise.
HcIntervalMax h_c_interval_max(double a, double b, double c,
                               LogBase base = LogBase::Two);

}  // namespace minent
