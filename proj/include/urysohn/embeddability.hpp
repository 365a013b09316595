#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "urysohn/metric_space.hpp"

namespace urysohn {

enum class EmbeddingTarget { sphere, euclidean };

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Outcome of an exact positive-semidefiniteness test.
///
/// PSD: `pivots` lists the eliminated indices with their (positive) pivot
/// values; the number of pivots is the rank. Not PSD: `witness` is a vector x
/// with x^T G x = `witness_value` < 0.
template <typename Scalar>
struct PsdCertificate {
  bool psd = true;
  std::vector<std::size_t> pivots;
  std::vector<Scalar> pivot_values;
  std::optional<Vector<Scalar>> witness;
  Scalar witness_value{0};

  std::size_t rank() const { return pivots.size(); }
};

/// Symmetric Gaussian elimination with diagonal pivoting in exact arithmetic.
template <typename Scalar>
PsdCertificate<Scalar> psd_certificate(const DistanceMatrix<Scalar>& gram) {
  const std::size_t n = std::size_t(gram.rows());
  if (gram.rows() != gram.cols()) throw std::invalid_argument("psd_certificate: matrix not square");
  DistanceMatrix<Scalar> m = gram;
  std::vector<bool> active(n, true);
  struct Step {
    std::size_t pivot;
    std::vector<std::pair<std::size_t, Scalar>> row;  // entries against indices active at the time
  };
  std::vector<Step> steps;
  PsdCertificate<Scalar> cert;
  const Scalar zero(0);

  while (true) {
    std::optional<std::size_t> p;
    for (std::size_t i = 0; i < n && !p; ++i)
      if (active[i] && m(i, i) > zero) p = i;
    if (p) {
      Step step{*p, {}};
      for (std::size_t j = 0; j < n; ++j)
        if (active[j] && j != *p) step.row.emplace_back(j, m(*p, j));
      const Scalar pv = m(*p, *p);
      for (auto& [i, mip] : step.row) {
        if (mip == zero) continue;
        for (auto& [j, mpj] : step.row) m(i, j) -= mip * mpj / pv;
      }
      active[*p] = false;
      cert.pivots.push_back(*p);
      cert.pivot_values.push_back(pv);
      steps.push_back(std::move(step));
      continue;
    }

    Vector<Scalar> y = Vector<Scalar>::Zero(n);
    bool negative = false;
    for (std::size_t i = 0; i < n && !negative; ++i) {
      if (active[i] && m(i, i) < zero) {
        y(i) = Scalar(1);
        negative = true;
      }
    }
    for (std::size_t i = 0; i < n && !negative; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n && !negative; ++j) {
        if (active[j] && m(i, j) != zero) {
          y(i) = Scalar(1);
          y(j) = m(i, j) > zero ? Scalar(-1) : Scalar(1);
          negative = true;
        }
      }
    }
    if (!negative) return cert;

    // Lift the reduced-coordinate witness through the eliminations.
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      Scalar acc(0);
      for (auto& [j, mpj] : it->row) acc += mpj * y(j);
      y(it->pivot) = -acc / m(it->pivot, it->pivot);
    }
    cert.psd = false;
    cert.witness_value = (y.transpose() * gram * y)(0, 0);
    cert.witness = std::move(y);
    return cert;
  }
}

template <typename Scalar>
struct EmbeddabilityResult {
  bool embeddable = false;
  DistanceMatrix<Scalar> gram;
  PsdCertificate<Scalar> certificate;
};

namespace detail {

template <typename Scalar>
void check_squared_distances(const DistanceMatrix<Scalar>& s) {
  if (s.rows() != s.cols()) throw std::invalid_argument("squared-distance matrix not square");
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    if (s(i, i) != Scalar(0)) throw std::invalid_argument("squared-distance matrix has nonzero diagonal");
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
      if (s(i, j) != s(j, i)) throw std::invalid_argument("squared-distance matrix not symmetric");
      if (s(i, j) < Scalar(0)) throw std::invalid_argument("squared-distance matrix has a negative entry");
    }
  }
}

}  // namespace detail

/// Gram matrix of a configuration on the unit sphere: G_ij = 1 - s_ij / 2.
template <typename Scalar>
DistanceMatrix<Scalar> sphere_gram(const DistanceMatrix<Scalar>& squared) {
  const auto n = squared.rows();
  return DistanceMatrix<Scalar>::Constant(n, n, Scalar(1)) - squared / Scalar(2);
}

/// Classical double centering: G = -1/2 J S J with J = I - 11^T / n.
template <typename Scalar>
DistanceMatrix<Scalar> centered_gram(const DistanceMatrix<Scalar>& squared) {
  const auto n = squared.rows();
  if (n == 0) return squared;
  DistanceMatrix<Scalar> j = DistanceMatrix<Scalar>::Identity(n, n) -
                             DistanceMatrix<Scalar>::Constant(n, n, Scalar(1) / Scalar(std::int64_t(n)));
  return -(j * squared * j) / Scalar(2);
}

/// Whether points with the given squared distances embed isometrically on
/// the unit sphere or in Euclidean space, decided exactly.
template <typename Scalar>
EmbeddabilityResult<Scalar> embeddability_test(const DistanceMatrix<Scalar>& squared, EmbeddingTarget target) {
  detail::check_squared_distances(squared);
  EmbeddabilityResult<Scalar> out;
  out.gram = target == EmbeddingTarget::sphere ? sphere_gram(squared) : centered_gram(squared);
  out.certificate = psd_certificate(out.gram);
  out.embeddable = out.certificate.psd;
  return out;
}

}  // namespace urysohn
