#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "urysohn/embedding.hpp"
#include "urysohn/metric_space.hpp"

namespace urysohn {

/// Piecewise constant map on [0,1): value[i] on [t_i, t_{i+1}), with
/// 0 = t_0 < ... < t_k = 1. Values are point (or group element) indices.
struct StepFunction {
  std::vector<Rational> breakpoints;
  std::vector<std::size_t> values;

  StepFunction() = default;
  /// Throws unless the breakpoints run strictly from 0 to 1 with one value
  /// per interval.
  StepFunction(std::vector<Rational> breakpoints, std::vector<std::size_t> values);
  static StepFunction constant(std::size_t value) { return {{Rational(0), Rational(1)}, {value}}; }

  std::size_t pieces() const { return values.size(); }
  std::size_t operator()(const Rational& t) const;
  /// Merges adjacent intervals with equal values.
  StepFunction simplified() const;
};

/// A piece of the common refinement of several step functions.
struct Piece {
  Rational from, to;
  std::vector<std::size_t> values;
  Rational length() const { return to - from; }
};
std::vector<Piece> common_refinement(const std::vector<const StepFunction*>& fs);

/// inf { eps > 0 : measure{ t : d(f(t), g(t)) > eps } < lambda eps }, exact.
Rational me_lambda(const StepFunction& f, const StepFunction& g, const MetricSpace& X,
                   const Rational& lambda = Rational(1));

/// Finite group of permutations of {0..degree-1}, closed under composition.
/// Element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup(const std::vector<PermutationIsometry>& generators, std::size_t degree);
  /// Z/k as rotations of k points; element i is rotation by i.
  static FiniteGroup cyclic(std::size_t k);

  std::size_t order() const { return elements_.size(); }
  std::size_t degree() const { return degree_; }
  const PermutationIsometry& operator[](std::size_t i) const { return elements_.at(i); }
  std::size_t index_of(const PermutationIsometry& p) const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;

 private:
  std::size_t degree_;
  std::vector<PermutationIsometry> elements_;
  std::map<std::vector<std::size_t>, std::size_t> index_;
};

struct ActionCheck {
  bool equal = false;
  Rational lhs;  ///< me_lambda(g.f1, g.f2)
  Rational rhs;  ///< me_lambda(f1, f2)
};

/// The pointwise action (g.f)(t) = g(t)(f(t)) of step functions into a group
/// of isometries of X preserves me_lambda. Throws if some group element is
/// not an isometry of X.
ActionCheck hm_action_isometry_check(const FiniteGroup& group, const MetricSpace& X, const StepFunction& g,
                                     const StepFunction& f1, const StepFunction& f2,
                                     const Rational& lambda = Rational(1));

struct UniformityCheck {
  Rational lhs;  ///< measure where f g^-1 lies outside V
  Rational rhs;  ///< measure where f != g
  bool pass = false;
};

/// Throws if V misses the identity.
UniformityCheck uniformity_domination_check(const FiniteGroup& group, const StepFunction& f, const StepFunction& g,
                                            const std::vector<std::size_t>& V);

/// Y = {0, ..., k-1} with probability weights, coordinates i.i.d.; points are
/// compared in the normalized Hamming distance on Y^n.
struct HammingSample {
  std::size_t n = 0;
  std::vector<Rational> weights;
  std::uint64_t seed = 0;
};

/// A = { y : sum y_i <= threshold } (or >= threshold).
struct ThresholdEvent {
  enum class Direction { at_most, at_least };
  std::int64_t threshold = 0;
  Direction direction = Direction::at_most;
};

struct ConcentrationResult {
  double mu_A_est = 0;
  double mu_A_eps_est = 0;
  std::uint64_t samples = 0;
  /// Exact values, two-point base only.
  std::optional<std::string> mu_A_exact;
  std::optional<std::string> mu_A_eps_exact;
  std::optional<double> mu_A_exact_value;
  std::optional<double> mu_A_eps_exact_value;
  /// 1 - exp(-2 eps^2 n), the bounded-differences bound for mu(A) >= 1/2.
  double oracle_bound = 0;
  /// Hamming radius in coordinates: floor(eps n).
  std::int64_t shift = 0;
};

/// Normalized Hamming distance from y to A, in changed coordinates.
std::int64_t changes_to_event(const std::vector<std::size_t>& y, std::size_t k, const ThresholdEvent& A);

/// Exact P(sum <= t) for n bits with P(1) = p, as "num/den".
std::string binomial_cdf_exact(std::size_t n, const Rational& p, std::int64_t t);

/// A_eps is the closed neighbourhood { y : rho(y, A) <= eps }. Monte Carlo
/// over `shards` seed-split streams (results depend on seed and shards, not on
/// jobs); the exact branch needs k = 2.
ConcentrationResult hamming_concentration(const HammingSample& hs, const ThresholdEvent& A, const Rational& eps,
                                          std::uint64_t samples, bool exact = true, unsigned jobs = 1,
                                          unsigned shards = 16);

}  // namespace urysohn
