#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "urysohn/embedding.hpp"
#include "urysohn/katetov.hpp"
#include "urysohn/metric_space.hpp"

namespace urysohn {

enum class Direction { forward, inverse };

/// Point-reuse policy when a partial isometry is extended to a new point.
enum class ReusePolicy {
  prefer_existing,  ///< smallest existing point with the required distances
  always_fresh,     ///< always adjoin a new point (controlled extension)
};

class FragmentBudgetExceeded : public std::runtime_error {
 public:
  explicit FragmentBudgetExceeded(std::size_t budget)
      : std::runtime_error("fragment budget of " + std::to_string(budget) + " points exhausted"), budget_(budget) {}
  std::size_t budget() const { return budget_; }

 private:
  std::size_t budget_;
};

/// Finite bijection between two point sets of a fragment, stored with its
/// inverse in lockstep.
class PartialIsometry {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  std::optional<std::size_t> image(std::size_t p, Direction dir = Direction::forward) const {
    const auto& m = dir == Direction::forward ? forward_ : inverse_;
    if (p < m.size() && m[p] != npos) return m[p];
    return std::nullopt;
  }

  /// (p, g(p)) in insertion order.
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  /// Adds p -> q. Throws if p already has an image or q a preimage.
  void insert(std::size_t p, std::size_t q);

 private:
  std::vector<std::size_t> forward_;
  std::vector<std::size_t> inverse_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

struct FragmentStep {
  enum class Kind { fresh_point, map_reuse, map_fresh, map_identity };
  Kind kind;
  std::size_t generator = 0;
  Direction direction = Direction::forward;
  std::size_t from = 0;
  std::size_t to = 0;
};

/// A growing finite rational metric space together with partial isometries
/// that are extended lazily, by back-and-forth, whenever a point outside a
/// domain is hit.
///
/// Every new point is a one-point extension by an admissible function, so the
/// space stays metric. Distances are stored internally as integers over a
/// common denominator which is enlarged when a finer rational arrives.
class UrysohnFragment {
 public:
  static constexpr std::size_t default_budget = 10000;

  explicit UrysohnFragment(const MetricSpace& seed, std::size_t budget = default_budget);

  std::size_t size() const { return rows_.size(); }
  std::size_t budget() const { return budget_; }
  Rational distance(std::size_t i, std::size_t j) const;
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  /// Snapshot of the current space.
  MetricSpace space() const;

  std::size_t add_generator();
  /// Generator seeded with the full action of an isometry of the seed space.
  std::size_t add_generator(const PermutationIsometry& g);
  std::size_t generator_count() const { return generators_.size(); }
  const PartialIsometry& generator(std::size_t k) const { return generators_.at(k); }

  /// Prescribes g_k(p) = q; must keep g_k distance-preserving.
  void seed_map(std::size_t k, std::size_t p, std::size_t q);

  /// Adjoins a point with the given distance to every existing point.
  std::size_t add_point(const std::vector<Rational>& profile, std::string label = {});
  /// Adjoins the controlled extension of `values` from `support`.
  std::size_t add_controlled_point(const std::vector<std::size_t>& support, const std::vector<Rational>& values,
                                   std::string label = {});
  /// Smallest point whose distances to `support` are exactly `values`.
  std::optional<std::size_t> find_realization(const std::vector<std::size_t>& support,
                                              const std::vector<Rational>& values) const;

  /// Image of `point` under generator k (or its inverse), extending the
  /// partial isometry if needed. An empty partial isometry maps a point to
  /// itself.
  std::size_t apply(std::size_t k, Direction dir, std::size_t point,
                    ReusePolicy policy = ReusePolicy::prefer_existing);

  /// With auditing on, every mutation re-validates the space and all partial
  /// isometries (slow; for tests and debugging).
  void set_audit(bool on) { audit_ = on; }
  /// Full check: metric axioms, distance preservation, inverse lockstep.
  bool audit() const;

  const std::vector<FragmentStep>& history() const { return history_; }

 private:
  std::int64_t to_grid(const Rational& r);
  std::int64_t grid(std::size_t i, std::size_t j) const {
    if (i == j) return 0;
    return i > j ? rows_[i][j] : rows_[j][i];
  }
  std::size_t push_row(std::vector<std::int64_t> row, std::string label);
  void check_point(std::size_t p) const;
  void after_mutation() const;

  std::int64_t scale_ = 1;
  std::vector<std::vector<std::int64_t>> rows_;  // rows_[i][j], j < i, in units of 1/scale_
  std::vector<std::string> labels_;
  std::vector<PartialIsometry> generators_;
  std::vector<FragmentStep> history_;
  std::size_t seed_size_ = 0;
  std::size_t budget_;
  bool audit_ = false;
};

struct GrowthResult {
  UrysohnFragment fragment;
  bool complete = true;
  std::size_t rounds_completed = 0;
};

/// Iterated one-point extensions: each round realizes, in random order, every
/// admissible grid profile over every subset of size <= k of the space
/// present at the start of the round.
GrowthResult grow_fragment(const MetricSpace& seed, const std::vector<Rational>& grid, std::size_t k,
                           std::size_t rounds, std::uint64_t rng_seed,
                           std::size_t budget = UrysohnFragment::default_budget);

}  // namespace urysohn
