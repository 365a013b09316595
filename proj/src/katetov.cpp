#include "urysohn/katetov.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace urysohn {

Admissibility is_admissible_on(const MetricSpace& X, std::span<const std::size_t> points,
                               std::span<const Rational> values) {
  if (points.size() != values.size()) throw std::invalid_argument("is_admissible: one value per point required");
  for (const auto& v : values)
    if (v < Rational(0)) throw std::invalid_argument("is_admissible: negative value " + v.str());
  Admissibility out;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      const Rational& d = X(points[a], points[b]);
      if (abs(values[a] - values[b]) > d || d > values[a] + values[b]) {
        out.admissible = false;
        out.violation = std::pair{points[a], points[b]};
        return out;
      }
    }
  }
  return out;
}

Admissibility is_admissible(const MetricSpace& X, std::span<const Rational> values) {
  if (values.size() != X.size()) throw std::invalid_argument("is_admissible: one value per point required");
  std::vector<std::size_t> all(X.size());
  std::iota(all.begin(), all.end(), std::size_t(0));
  return is_admissible_on(X, all, values);
}

KatetovFunction controlled_extension(const MetricSpace& X, const std::vector<std::size_t>& Y,
                                     const std::vector<Rational>& f_on_Y) {
  if (Y.empty()) throw std::invalid_argument("controlled_extension: empty support");
  for (auto y : Y)
    if (y >= X.size()) throw std::out_of_range("controlled_extension: support point outside space");
  auto adm = is_admissible_on(X, Y, f_on_Y);
  if (!adm) {
    throw std::invalid_argument("controlled_extension: values not admissible on support (pair " +
                                std::to_string(adm.violation->first) + "," +
                                std::to_string(adm.violation->second) + ")");
  }
  KatetovFunction f{std::vector<Rational>(X.size()), Y};
  for (std::size_t x = 0; x < X.size(); ++x) {
    Rational best = X(x, Y[0]) + f_on_Y[0];
    for (std::size_t t = 1; t < Y.size(); ++t) best = std::min(best, X(x, Y[t]) + f_on_Y[t]);
    f.values[x] = best;
  }
  return f;
}

MetricSpace one_point_extend(const MetricSpace& X, const KatetovFunction& f, std::string label, bool audit) {
  auto adm = is_admissible(X, f.values);
  if (!adm) {
    throw std::invalid_argument("one_point_extend: function not admissible (pair " +
                                std::to_string(adm.violation->first) + "," +
                                std::to_string(adm.violation->second) + ")");
  }
  for (std::size_t x = 0; x < X.size(); ++x)
    if (f(x).is_zero())
      throw std::invalid_argument("one_point_extend: new point would coincide with point " + std::to_string(x));
  const std::size_t n = X.size();
  DistanceMatrix<Rational> d(n + 1, n + 1);
  d.topLeftCorner(n, n) = X.distances();
  for (std::size_t x = 0; x < n; ++x) d(x, n) = d(n, x) = f(x);
  d(n, n) = Rational(0);
  auto labels = X.labels();
  labels.push_back(label.empty() ? std::to_string(n) : std::move(label));
  if (audit) return MetricSpace(std::move(d), std::move(labels));
  return MetricSpace::trusted(std::move(d), std::move(labels));
}

ExtensionVerdict extension_property_check(const MetricSpace& X, const std::vector<Rational>& grid, std::size_t k,
                                          const std::optional<std::vector<std::size_t>>& base) {
  for (const auto& v : grid)
    if (v <= Rational(0)) throw std::invalid_argument("extension_property_check: grid values must be positive");
  std::vector<std::size_t> points;
  if (base) {
    points = *base;
  } else {
    points.resize(X.size());
    std::iota(points.begin(), points.end(), std::size_t(0));
  }
  ExtensionVerdict out;
  for_each_admissible_profile(X, points, grid, k, [&](const auto& subset, const auto& profile) {
    ++out.profiles_checked;
    for (std::size_t x = 0; x < X.size(); ++x) {
      bool match = true;
      for (std::size_t t = 0; t < subset.size() && match; ++t) match = X(x, subset[t]) == profile[t];
      if (match) return true;
    }
    out.holds = false;
    out.missing_subset = subset;
    out.missing_profile = profile;
    return false;
  });
  return out;
}

}  // namespace urysohn
