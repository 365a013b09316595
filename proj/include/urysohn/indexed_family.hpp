#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "urysohn/metric_space.hpp"

namespace urysohn {

/// A metric space indexed by a finite ordered set: index i names the point
/// `map[i]` of `target`. Several indices may name the same point.
template <typename Scalar>
struct BasicIndexedFamily {
  std::vector<std::string> index;
  BasicMetricSpace<Scalar> target;
  std::vector<std::size_t> map;

  BasicIndexedFamily() = default;
  BasicIndexedFamily(std::vector<std::string> index_, BasicMetricSpace<Scalar> target_, std::vector<std::size_t> map_)
      : index(std::move(index_)), target(std::move(target_)), map(std::move(map_)) {
    if (index.size() != map.size()) throw std::invalid_argument("indexed family: index/map size mismatch");
    for (auto p : map)
      if (p >= target.size()) throw std::out_of_range("indexed family: point outside target");
  }

  /// Identity indexing of a whole space.
  static BasicIndexedFamily of(BasicMetricSpace<Scalar> space) {
    std::vector<std::size_t> map(space.size());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
    auto labels = space.labels();
    return {std::move(labels), std::move(space), std::move(map)};
  }

  std::size_t size() const { return map.size(); }
  const Scalar& distance(std::size_t i, std::size_t j) const { return target(map[i], map[j]); }

  /// Image points in increasing order.
  std::vector<std::size_t> image() const {
    std::set<std::size_t> s(map.begin(), map.end());
    return {s.begin(), s.end()};
  }
};

using IndexedFamily = BasicIndexedFamily<Rational>;

template <typename Scalar>
struct EpsilonIsometry {
  bool within = true;
  Scalar max_deviation{0};
  std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
};

/// Largest |d_A(i,j) - d_B(i,j)| over index pairs, compared exactly with eps.
template <typename Scalar>
EpsilonIsometry<Scalar> epsilon_isometry_check(const BasicIndexedFamily<Scalar>& a,
                                               const BasicIndexedFamily<Scalar>& b, const Scalar& eps) {
  if (a.index != b.index) throw std::invalid_argument("epsilon_isometry_check: index sets differ");
  using std::abs;
  EpsilonIsometry<Scalar> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      Scalar dev = abs(a.distance(i, j) - b.distance(i, j));
      if (!out.worst_pair || dev > out.max_deviation) {
        out.max_deviation = dev;
        out.worst_pair = {i, j};
      }
    }
  out.within = out.max_deviation <= eps;
  return out;
}

/// Where the image points of one input family land inside a glued space.
struct CopyEmbedding {
  std::vector<std::size_t> source_points;  ///< image points of the input, increasing
  std::vector<std::size_t> glued_points;   ///< matching points of the glued space
  std::size_t operator()(std::size_t source_point) const {
    for (std::size_t t = 0; t < source_points.size(); ++t)
      if (source_points[t] == source_point) return glued_points[t];
    throw std::out_of_range("point not in copy");
  }
};

template <typename Scalar>
struct GlueResult {
  BasicMetricSpace<Scalar> space;
  CopyEmbedding a_copy;
  CopyEmbedding b_copy;
  /// Vertices of the disjoint union (A-image first, then B-image) merged
  /// into each point of `space`; singletons unless a bridge had length 0.
  std::vector<std::vector<std::size_t>> collapse_classes;
};

/// Joins the images of two eps-isometric families into one space.
///
/// The result is the path metric of the weighted graph on the disjoint union
/// of both images, with the original distances inside each copy and bridges of
/// length eps between f_A(i) and f_B(i). Zero-length bridges are identified.
template <typename Scalar>
GlueResult<Scalar> glue_indexed(const BasicIndexedFamily<Scalar>& a, const BasicIndexedFamily<Scalar>& b,
                                const Scalar& eps) {
  if (eps < Scalar(0)) throw std::invalid_argument("glue_indexed: negative eps");
  auto check = epsilon_isometry_check(a, b, eps);
  if (!check.within) {
    throw std::invalid_argument("glue_indexed: families are not eps-isometric (deviation " +
                                detail::show(check.max_deviation) + ")");
  }
  const auto ia = a.image();
  const auto ib = b.image();
  const std::size_t na = ia.size();
  const std::size_t n = na + ib.size();
  auto pos = [](const std::vector<std::size_t>& v, std::size_t p) {
    return std::size_t(std::lower_bound(v.begin(), v.end(), p) - v.begin());
  };

  std::vector<std::vector<std::optional<Scalar>>> w(n, std::vector<std::optional<Scalar>>(n));
  for (std::size_t s = 0; s < na; ++s)
    for (std::size_t t = 0; t < na; ++t) w[s][t] = a.target(ia[s], ia[t]);
  for (std::size_t s = 0; s < ib.size(); ++s)
    for (std::size_t t = 0; t < ib.size(); ++t) w[na + s][na + t] = b.target(ib[s], ib[t]);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t u = pos(ia, a.map[i]);
    std::size_t v = na + pos(ib, b.map[i]);
    if (!w[u][v] || eps < *w[u][v]) w[u][v] = w[v][u] = eps;
  }

  std::vector<std::string> labels;
  for (auto p : ia) labels.push_back("A:" + a.target.label(p));
  for (auto p : ib) labels.push_back("B:" + b.target.label(p));

  BasicPseudoMetricSpace<Scalar> pseudo(shortest_path_closure(w), std::move(labels));
  auto q = pseudo.metric_quotient();

  GlueResult<Scalar> out{std::move(q.space), {}, {}, std::move(q.classes)};
  out.a_copy.source_points = ia;
  out.b_copy.source_points = ib;
  for (std::size_t s = 0; s < na; ++s) out.a_copy.glued_points.push_back(q.class_of[s]);
  for (std::size_t s = 0; s < ib.size(); ++s) out.b_copy.glued_points.push_back(q.class_of[na + s]);
  return out;
}

}  // namespace urysohn
