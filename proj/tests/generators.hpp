#pragma once

// Random inputs for the property-style tests. Seeds are fixed per test so
// failures reproduce.

#include <algorithm>
#include <random>
#include <vector>

#include "urysohn/concentration.hpp"
#include "urysohn/embedding.hpp"
#include "urysohn/metric_space.hpp"

namespace urysohn::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, std::int64_t max_num, std::int64_t den) {
  std::uniform_int_distribution<std::int64_t> dist(1, max_num);
  return Rational(dist(rng), den);
}

/// Shortest-path metric of a random complete graph with weights k/den,
/// k in [1, max_num]. Always a valid metric.
inline MetricSpace random_metric(Rng& rng, std::size_t n, std::int64_t max_num = 8, std::int64_t den = 2) {
  std::vector<std::vector<std::optional<Rational>>> w(n, std::vector<std::optional<Rational>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) w[i][j] = w[j][i] = random_rational(rng, max_num, den);
  return MetricSpace(shortest_path_closure(w));
}

/// Random metric with every distance drawn from `values`, by rejection.
/// `values` must satisfy max <= 2 min so that some choice always works.
inline MetricSpace random_grid_metric(Rng& rng, std::size_t n, const std::vector<Rational>& values) {
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    DistanceMatrix<Rational> d = DistanceMatrix<Rational>::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = values[pick(rng)];
    auto v = validate_metric(d);
    if (v.ok()) return *v.space;
  }
  throw std::runtime_error("random_grid_metric: no valid metric found");
}

inline std::vector<std::size_t> random_subset(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

inline MetricSpace space_from(std::initializer_list<std::initializer_list<Rational>> upper, std::size_t n) {
  // Upper-triangular rows as in the .ums format: row i holds d(i,i+1..n-1).
  DistanceMatrix<Rational> d = DistanceMatrix<Rational>::Zero(n, n);
  std::size_t i = 0;
  for (auto row : upper) {
    std::size_t j = i + 1;
    for (auto v : row) {
      d(i, j) = d(j, i) = v;
      ++j;
    }
    ++i;
  }
  return MetricSpace(d);
}

/// Input for approximate_isometries: |X| <= 6 with distances in {1,2,3,4}/2,
/// up to two isometries drawn from Iso(X), one or two points, eps 1/2 or 1/4.
struct ApproxInstance {
  MetricSpace X;
  std::vector<PermutationIsometry> gens;
  std::vector<std::size_t> points;
  Rational eps;
};

inline ApproxInstance random_approx_instance(Rng& rng) {
  std::size_t size = 1 + rng() % 6;
  const std::vector<Rational> values{Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)};
  ApproxInstance out{size == 1 ? MetricSpace(DistanceMatrix<Rational>::Zero(1, 1))
                               : random_grid_metric(rng, size, values),
                     {}, {}, Rational(0)};
  auto iso = isometry_group(out.X);
  std::size_t m = rng() % 3, n = 1 + rng() % 2;
  for (std::size_t j = 0; j < m; ++j) out.gens.push_back(iso[rng() % iso.size()]);
  for (std::size_t i = 0; i < n; ++i) out.points.push_back(rng() % size);
  out.eps = rng() % 2 ? Rational(1, 2) : Rational(1, 4);
  return out;
}

/// Step function with up to `max_pieces` intervals, breakpoints on the grid
/// 1/den and values below `targets`.
inline StepFunction random_step_function(Rng& rng, std::size_t targets, std::size_t max_pieces = 5,
                                         std::int64_t den = 12) {
  std::size_t cuts = rng() % std::min<std::size_t>(max_pieces, static_cast<std::size_t>(den));
  auto inner = random_subset(rng, static_cast<std::size_t>(den - 1), cuts);
  std::vector<Rational> b{Rational(0)};
  for (auto c : inner) b.push_back(Rational(static_cast<std::int64_t>(c) + 1, den));
  b.push_back(Rational(1));
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) v.push_back(rng() % targets);
  return StepFunction(std::move(b), std::move(v));
}

}  // namespace urysohn::testing
