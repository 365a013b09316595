#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "urysohn/rational.hpp"

namespace urysohn {

template <typename Scalar>
using DistanceMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// One failed metric axiom. Indices refer to rows/columns of the input.
///
/// For `triangle`, the violated inequality is d(i,k) <= d(i,j) + d(j,k).
struct Violation {
  enum class Kind { not_square, negative, asymmetric, nonzero_diagonal, zero_distance, triangle };
  Kind kind;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  std::string message;
};

std::string to_string(Violation::Kind kind);

class MetricError : public std::invalid_argument {
 public:
  explicit MetricError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

std::vector<std::string> default_labels(std::size_t n);

namespace detail {

template <typename Scalar>
void check_square(const DistanceMatrix<Scalar>& m, std::vector<Violation>& out) {
  if (m.rows() != m.cols()) {
    out.push_back({Violation::Kind::not_square, std::size_t(m.rows()), std::size_t(m.cols()), 0,
                   "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols())});
  }
}

template <typename Scalar>
std::string show(const Scalar& s) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return s.str();
  } else {
    return std::to_string(s);
  }
}

// Axioms shared by metrics and pseudometrics; `strict` adds d(i,j) > 0 for i != j.
template <typename Scalar>
std::vector<Violation> collect_violations(const DistanceMatrix<Scalar>& d, bool strict) {
  std::vector<Violation> out;
  check_square(d, out);
  if (!out.empty()) return out;
  const std::size_t n = std::size_t(d.rows());
  const Scalar zero(0);
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != zero) {
      out.push_back({Violation::Kind::nonzero_diagonal, i, i, 0,
                     "d(" + std::to_string(i) + "," + std::to_string(i) + ") = " + show(d(i, i))});
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (d(i, j) < zero) {
        out.push_back({Violation::Kind::negative, i, j, 0,
                       "d(" + std::to_string(i) + "," + std::to_string(j) + ") = " + show(d(i, j)) + " < 0"});
      }
      if (i < j && d(i, j) != d(j, i)) {
        out.push_back({Violation::Kind::asymmetric, i, j, 0,
                       "d(" + std::to_string(i) + "," + std::to_string(j) + ") != d(" + std::to_string(j) +
                           "," + std::to_string(i) + ")"});
      }
      if (strict && i < j && d(i, j) == zero) {
        out.push_back({Violation::Kind::zero_distance, i, j, 0,
                       "distinct points " + std::to_string(i) + "," + std::to_string(j) + " at distance 0"});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        if (d(i, k) > d(i, j) + d(j, k)) {
          out.push_back({Violation::Kind::triangle, i, j, k,
                         "d(" + std::to_string(i) + "," + std::to_string(k) + ") = " + show(d(i, k)) + " > " +
                             show(d(i, j)) + " + " + show(d(j, k))});
        }
      }
    }
  }
  return out;
}

}  // namespace detail

/// Finite metric space with an explicit distance matrix.
///
/// Instances are only produced by validating factories, so every object
/// satisfies symmetry, zero diagonal, strict positivity off the diagonal and
/// the triangle inequality.
template <typename Scalar>
class BasicMetricSpace {
 public:
  using scalar_type = Scalar;
  using matrix_type = DistanceMatrix<Scalar>;

  BasicMetricSpace() = default;

  /// Validates `d`; throws MetricError listing every violation.
  explicit BasicMetricSpace(matrix_type d, std::vector<std::string> labels = {})
      : d_(std::move(d)), labels_(std::move(labels)) {
    auto violations = detail::collect_violations(d_, true);
    if (!violations.empty()) throw MetricError(std::move(violations));
    fix_labels();
  }

  /// Skips validation. For constructions that guarantee the axioms by proof;
  /// the test suites re-validate their outputs.
  static BasicMetricSpace trusted(matrix_type d, std::vector<std::string> labels = {}) {
    BasicMetricSpace s;
    s.d_ = std::move(d);
    s.labels_ = std::move(labels);
    s.fix_labels();
    return s;
  }

  std::size_t size() const { return std::size_t(d_.rows()); }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return d_(i, j); }
  const matrix_type& distances() const { return d_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }

  Scalar diameter() const {
    Scalar best(0);
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j) best = std::max(best, d_(i, j));
    return best;
  }

  std::optional<Scalar> min_positive_distance() const {
    std::optional<Scalar> best;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j)
        if (!best || d_(i, j) < *best) best = d_(i, j);
    return best;
  }

  BasicMetricSpace subspace(const std::vector<std::size_t>& points) const {
    matrix_type sub(points.size(), points.size());
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < points.size(); ++a) {
      labels.push_back(labels_.at(points[a]));
      for (std::size_t b = 0; b < points.size(); ++b) sub(a, b) = d_(points[a], points[b]);
    }
    return trusted(std::move(sub), std::move(labels));
  }

  friend bool operator==(const BasicMetricSpace& a, const BasicMetricSpace& b) {
    return a.d_ == b.d_ && a.labels_ == b.labels_;
  }

 private:
  void fix_labels() {
    if (labels_.empty()) labels_ = default_labels(size());
    if (labels_.size() != size()) throw std::invalid_argument("label count does not match point count");
  }

  matrix_type d_;
  std::vector<std::string> labels_;
};

using MetricSpace = BasicMetricSpace<Rational>;

/// Pseudometric: distinct points may be at distance zero.
template <typename Scalar>
class BasicPseudoMetricSpace {
 public:
  using matrix_type = DistanceMatrix<Scalar>;

  explicit BasicPseudoMetricSpace(matrix_type d, std::vector<std::string> labels = {})
      : d_(std::move(d)), labels_(std::move(labels)) {
    auto violations = detail::collect_violations(d_, false);
    if (!violations.empty()) throw MetricError(std::move(violations));
    if (labels_.empty()) labels_ = default_labels(size());
  }

  std::size_t size() const { return std::size_t(d_.rows()); }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return d_(i, j); }
  const matrix_type& distances() const { return d_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Classes of points at mutual distance zero, each sorted, ordered by
  /// smallest member.
  std::vector<std::vector<std::size_t>> zero_classes() const {
    std::vector<std::vector<std::size_t>> classes;
    std::vector<bool> seen(size(), false);
    for (std::size_t i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      classes.emplace_back();
      for (std::size_t j = i; j < size(); ++j) {
        if (!seen[j] && d_(i, j) == Scalar(0)) {
          seen[j] = true;
          classes.back().push_back(j);
        }
      }
    }
    return classes;
  }

  bool is_metric() const { return zero_classes().size() == size(); }

  struct Quotient {
    BasicMetricSpace<Scalar> space;
    std::vector<std::vector<std::size_t>> classes;
    std::vector<std::size_t> class_of;  ///< point -> quotient point
  };

  /// Identifies points at distance zero. Labels of merged points are joined
  /// with '='.
  Quotient metric_quotient() const {
    auto classes = zero_classes();
    std::vector<std::size_t> class_of(size());
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (auto p : classes[c]) class_of[p] = c;
    matrix_type q(classes.size(), classes.size());
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < classes.size(); ++a) {
      std::string l;
      for (auto p : classes[a]) l += (l.empty() ? "" : "=") + labels_[p];
      labels.push_back(std::move(l));
      for (std::size_t b = 0; b < classes.size(); ++b) q(a, b) = d_(classes[a][0], classes[b][0]);
    }
    return {BasicMetricSpace<Scalar>::trusted(std::move(q), std::move(labels)), std::move(classes),
            std::move(class_of)};
  }

 private:
  matrix_type d_;
  std::vector<std::string> labels_;
};

using PseudoMetricSpace = BasicPseudoMetricSpace<Rational>;

/// Either a metric space or every violated axiom.
template <typename Scalar>
struct MetricValidation {
  std::optional<BasicMetricSpace<Scalar>> space;
  std::vector<Violation> violations;
  bool ok() const { return space.has_value(); }
};

template <typename Scalar>
MetricValidation<Scalar> validate_metric(const DistanceMatrix<Scalar>& d, std::vector<std::string> labels = {}) {
  MetricValidation<Scalar> result;
  result.violations = detail::collect_violations(d, true);
  if (result.violations.empty()) result.space = BasicMetricSpace<Scalar>::trusted(d, std::move(labels));
  return result;
}

/// All-pairs shortest paths on a weighted complete graph given as a matrix;
/// a value of `std::nullopt` marks a missing edge.
template <typename Scalar>
DistanceMatrix<Scalar> shortest_path_closure(const std::vector<std::vector<std::optional<Scalar>>>& weights) {
  const std::size_t n = weights.size();
  std::vector<std::vector<std::optional<Scalar>>> dist = weights;
  for (std::size_t i = 0; i < n; ++i) dist[i][i] = Scalar(0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!dist[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!dist[k][j]) continue;
        Scalar via = *dist[i][k] + *dist[k][j];
        if (!dist[i][j] || via < *dist[i][j]) dist[i][j] = via;
      }
    }
  DistanceMatrix<Scalar> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!dist[i][j]) throw std::invalid_argument("weighted graph is disconnected");
      out(i, j) = *dist[i][j];
    }
  return out;
}

/// Discrete space: every pair of distinct points at distance `value`.
template <typename Scalar = Rational>
BasicMetricSpace<Scalar> discrete_space(std::size_t n, Scalar value = Scalar(1)) {
  DistanceMatrix<Scalar> d = DistanceMatrix<Scalar>::Constant(n, n, value);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = Scalar(0);
  return BasicMetricSpace<Scalar>::trusted(std::move(d));
}

/// Path graph metric on n points with unit edges.
template <typename Scalar = Rational>
BasicMetricSpace<Scalar> path_space(std::size_t n) {
  DistanceMatrix<Scalar> d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = Scalar(static_cast<std::int64_t>(i > j ? i - j : j - i));
  return BasicMetricSpace<Scalar>::trusted(std::move(d));
}

/// max over z of |d(x,z) - d(y,z)|; equals d(x,y) in any metric space.
template <typename Scalar>
Scalar kuratowski_sup(const BasicMetricSpace<Scalar>& X, std::size_t x, std::size_t y) {
  using std::abs;
  Scalar best(0);
  for (std::size_t z = 0; z < X.size(); ++z) best = std::max(best, Scalar(abs(X(x, z) - X(y, z))));
  return best;
}

}  // namespace urysohn
