#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "urysohn/metric_space.hpp"

namespace urysohn {

/// Distances from an abstract new point to every point of a base space.
///
/// `support` is a subset controlling the function:
/// f(x) = min over y in support of d(x,y) + f(y).
struct KatetovFunction {
  std::vector<Rational> values;
  std::vector<std::size_t> support;

  const Rational& operator()(std::size_t x) const { return values[x]; }
  friend bool operator==(const KatetovFunction&, const KatetovFunction&) = default;
};

struct Admissibility {
  bool admissible = true;
  /// First pair (x < y) breaking |f(x) - f(y)| <= d(x,y) <= f(x) + f(y).
  std::optional<std::pair<std::size_t, std::size_t>> violation;

  explicit operator bool() const { return admissible; }
};

/// Throws std::invalid_argument on wrong arity or negative values.
Admissibility is_admissible(const MetricSpace& X, std::span<const Rational> values);

/// Admissibility of `values` (indexed like `points`) on the subspace `points`.
Admissibility is_admissible_on(const MetricSpace& X, std::span<const std::size_t> points,
                               std::span<const Rational> values);

/// Largest 1-Lipschitz extension of f from Y to X. Throws if f is not
/// admissible on Y.
KatetovFunction controlled_extension(const MetricSpace& X, const std::vector<std::size_t>& Y,
                                     const std::vector<Rational>& f_on_Y);

/// X plus one point at distance f(x) from each x. Rejects inadmissible f and
/// zero values (the new point would coincide with an old one). With `audit`
/// the result is fully re-validated.
MetricSpace one_point_extend(const MetricSpace& X, const KatetovFunction& f, std::string label = {},
                             bool audit = false);

/// Every admissible profile with values in `grid` over every subset of size
/// 1..k is realized by some point of X. `base` restricts the subsets.
struct ExtensionVerdict {
  bool holds = true;
  std::vector<std::size_t> missing_subset;
  std::vector<Rational> missing_profile;
  std::size_t profiles_checked = 0;
};

ExtensionVerdict extension_property_check(const MetricSpace& X, const std::vector<Rational>& grid, std::size_t k,
                                          const std::optional<std::vector<std::size_t>>& base = std::nullopt);

/// Calls `visit(subset, profile)` for every admissible grid profile over
/// subsets of `base` with sizes 1..k; canonical order (subset size, then
/// lexicographic subset, then lexicographic profile in grid order).
/// Stops early when `visit` returns false.
template <typename Visit>
void for_each_admissible_profile(const MetricSpace& X, const std::vector<std::size_t>& base,
                                 const std::vector<Rational>& grid, std::size_t k, Visit&& visit);

// ---------------------------------------------------------------------------

template <typename Visit>
void for_each_admissible_profile(const MetricSpace& X, const std::vector<std::size_t>& base,
                                 const std::vector<Rational>& grid, std::size_t k, Visit&& visit) {
  if (grid.empty()) return;
  const std::size_t nb = base.size();
  for (std::size_t size = 1; size <= std::min(k, nb); ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      std::vector<std::size_t> subset(size);
      for (std::size_t i = 0; i < size; ++i) subset[i] = base[pick[i]];
      std::vector<std::size_t> digits(size, 0);
      while (true) {
        std::vector<Rational> profile(size);
        for (std::size_t i = 0; i < size; ++i) profile[i] = grid[digits[i]];
        if (is_admissible_on(X, subset, profile).admissible) {
          if (!visit(subset, profile)) return;
        }
        std::size_t pos = size;
        while (pos > 0 && ++digits[pos - 1] == grid.size()) digits[--pos] = 0;
        if (pos == 0) break;
      }
      // next combination
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == nb - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
}

}  // namespace urysohn
