#include "urysohn/fragment.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace urysohn {
namespace {

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw RationalOverflow("fragment grid exceeded 64-bit range");
  return out;
}

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw RationalOverflow("fragment grid exceeded 64-bit range");
  return out;
}

}  // namespace

void PartialIsometry::insert(std::size_t p, std::size_t q) {
  if (image(p, Direction::forward)) throw std::logic_error("partial isometry: point already in domain");
  if (image(q, Direction::inverse)) throw std::logic_error("partial isometry: point already in range");
  if (forward_.size() <= p) forward_.resize(p + 1, npos);
  if (inverse_.size() <= q) inverse_.resize(q + 1, npos);
  forward_[p] = q;
  inverse_[q] = p;
  pairs_.emplace_back(p, q);
}

UrysohnFragment::UrysohnFragment(const MetricSpace& seed, std::size_t budget) : budget_(budget) {
  if (seed.size() > budget_) throw FragmentBudgetExceeded(budget_);
  for (std::size_t i = 0; i < seed.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) scale_ = lcm_checked(scale_, seed(i, j).den());
  for (std::size_t i = 0; i < seed.size(); ++i) {
    std::vector<std::int64_t> row(i);
    for (std::size_t j = 0; j < i; ++j) row[j] = seed(i, j).num() * (scale_ / seed(i, j).den());
    rows_.push_back(std::move(row));
    labels_.push_back(seed.label(i));
  }
  seed_size_ = seed.size();
}

Rational UrysohnFragment::distance(std::size_t i, std::size_t j) const {
  check_point(i);
  check_point(j);
  return Rational(grid(i, j), scale_);
}

MetricSpace UrysohnFragment::space() const {
  const std::size_t n = size();
  DistanceMatrix<Rational> d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = Rational(grid(i, j), scale_);
  return MetricSpace::trusted(std::move(d), labels_);
}

std::int64_t UrysohnFragment::to_grid(const Rational& r) {
  if (r < Rational(0)) throw std::invalid_argument("fragment: negative distance " + r.str());
  if (scale_ % r.den() != 0) {
    std::int64_t next = lcm_checked(scale_, r.den());
    std::int64_t factor = next / scale_;
    for (auto& row : rows_)
      for (auto& v : row) v = mul_checked(v, factor);
    scale_ = next;
  }
  return mul_checked(r.num(), scale_ / r.den());
}

void UrysohnFragment::check_point(std::size_t p) const {
  if (p >= size()) throw std::out_of_range("fragment: unknown point " + std::to_string(p));
}

std::size_t UrysohnFragment::add_generator() {
  generators_.emplace_back();
  return generators_.size() - 1;
}

std::size_t UrysohnFragment::add_generator(const PermutationIsometry& g) {
  if (g.size() != seed_size_) throw std::invalid_argument("fragment: generator degree differs from seed size");
  std::size_t k = add_generator();
  for (std::size_t x = 0; x < g.size(); ++x) seed_map(k, x, g(x));
  return k;
}

void UrysohnFragment::seed_map(std::size_t k, std::size_t p, std::size_t q) {
  check_point(p);
  check_point(q);
  auto& g = generators_.at(k);
  if (auto img = g.image(p)) {
    if (*img == q) return;
    throw std::invalid_argument("fragment: conflicting seed map");
  }
  for (auto [a, b] : g.pairs())
    if (grid(p, a) != grid(q, b)) throw std::invalid_argument("fragment: seed map does not preserve distances");
  g.insert(p, q);
  after_mutation();
}

std::size_t UrysohnFragment::push_row(std::vector<std::int64_t> row, std::string label) {
  if (size() + 1 > budget_) throw FragmentBudgetExceeded(budget_);
  std::size_t id = size();
  rows_.push_back(std::move(row));
  labels_.push_back(label.empty() ? "p" + std::to_string(id) : std::move(label));
  history_.push_back({FragmentStep::Kind::fresh_point, 0, Direction::forward, id, id});
  return id;
}

std::size_t UrysohnFragment::add_point(const std::vector<Rational>& profile, std::string label) {
  if (profile.size() != size()) throw std::invalid_argument("fragment: profile needs one value per point");
  std::vector<std::int64_t> row(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) row[i] = to_grid(profile[i]);
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] == 0) throw std::invalid_argument("fragment: new point coincides with point " + std::to_string(i));
    for (std::size_t j = 0; j < i; ++j) {
      std::int64_t d = grid(i, j);
      if (std::abs(row[i] - row[j]) > d || d > row[i] + row[j])
        throw std::invalid_argument("fragment: profile not admissible at pair " + std::to_string(j) + "," +
                                    std::to_string(i));
    }
  }
  std::size_t id = push_row(std::move(row), std::move(label));
  after_mutation();
  return id;
}

std::size_t UrysohnFragment::add_controlled_point(const std::vector<std::size_t>& support,
                                                  const std::vector<Rational>& values, std::string label) {
  if (support.empty() || support.size() != values.size())
    throw std::invalid_argument("fragment: controlled point needs a nonempty support with values");
  std::vector<std::int64_t> f(values.size());
  for (std::size_t t = 0; t < values.size(); ++t) {
    check_point(support[t]);
    f[t] = to_grid(values[t]);
    if (f[t] == 0) throw std::invalid_argument("fragment: zero value in controlled profile");
  }
  for (std::size_t a = 0; a < support.size(); ++a)
    for (std::size_t b = a + 1; b < support.size(); ++b) {
      std::int64_t d = grid(support[a], support[b]);
      if (std::abs(f[a] - f[b]) > d || d > f[a] + f[b])
        throw std::invalid_argument("fragment: controlled profile not admissible on its support");
    }
  std::vector<std::int64_t> row(size());
  for (std::size_t x = 0; x < row.size(); ++x) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t t = 0; t < support.size(); ++t) best = std::min(best, add_checked(grid(x, support[t]), f[t]));
    row[x] = best;
  }
  std::size_t id = push_row(std::move(row), std::move(label));
  after_mutation();
  return id;
}

std::optional<std::size_t> UrysohnFragment::find_realization(const std::vector<std::size_t>& support,
                                                             const std::vector<Rational>& values) const {
  std::vector<std::int64_t> f(values.size());
  for (std::size_t t = 0; t < values.size(); ++t) {
    // A value off the grid cannot be realized by any stored point.
    if (scale_ % values[t].den() != 0) return std::nullopt;
    f[t] = values[t].num() * (scale_ / values[t].den());
  }
  for (std::size_t x = 0; x < size(); ++x) {
    bool match = true;
    for (std::size_t t = 0; t < support.size() && match; ++t) match = grid(x, support[t]) == f[t];
    if (match) return x;
  }
  return std::nullopt;
}

std::size_t UrysohnFragment::apply(std::size_t k, Direction dir, std::size_t point, ReusePolicy policy) {
  if (k >= generators_.size()) throw std::out_of_range("fragment: unknown generator " + std::to_string(k));
  check_point(point);
  auto& g = generators_[k];
  if (auto img = g.image(point, dir)) return *img;

  auto record = [&](std::size_t target, FragmentStep::Kind kind) {
    if (dir == Direction::forward) {
      g.insert(point, target);
    } else {
      g.insert(target, point);
    }
    history_.push_back({kind, k, dir, point, target});
    after_mutation();
    return target;
  };

  if (g.empty()) return record(point, FragmentStep::Kind::map_identity);

  // Required: d(target, h(a)) = d(point, a) for every a in the current domain
  // of h (h = g or its inverse).
  std::vector<std::size_t> anchors;
  std::vector<std::int64_t> required;
  anchors.reserve(g.size());
  required.reserve(g.size());
  for (auto [a, b] : g.pairs()) {
    std::size_t from = dir == Direction::forward ? a : b;
    std::size_t to = dir == Direction::forward ? b : a;
    anchors.push_back(to);
    required.push_back(grid(point, from));
  }

  if (policy == ReusePolicy::prefer_existing) {
    for (std::size_t t = 0; t < size(); ++t) {
      bool match = true;
      for (std::size_t c = 0; c < anchors.size() && match; ++c) match = grid(t, anchors[c]) == required[c];
      if (match) return record(t, FragmentStep::Kind::map_reuse);
    }
  }

  std::vector<std::int64_t> row(size());
  for (std::size_t x = 0; x < row.size(); ++x) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t c = 0; c < anchors.size(); ++c) best = std::min(best, add_checked(grid(x, anchors[c]), required[c]));
    row[x] = best;
  }
  std::size_t id = push_row(std::move(row), {});
  return record(id, FragmentStep::Kind::map_fresh);
}

bool UrysohnFragment::audit() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (grid(i, j) <= 0) return false;
      for (std::size_t l = 0; l < n; ++l)
        if (grid(i, j) > grid(i, l) + grid(l, j)) return false;
    }
  for (const auto& g : generators_) {
    const auto& pairs = g.pairs();
    for (std::size_t s = 0; s < pairs.size(); ++s) {
      auto [a, b] = pairs[s];
      if (a >= n || b >= n) return false;
      if (g.image(a, Direction::forward) != b || g.image(b, Direction::inverse) != a) return false;
      for (std::size_t t = 0; t < s; ++t)
        if (grid(a, pairs[t].first) != grid(b, pairs[t].second)) return false;
    }
  }
  return true;
}

void UrysohnFragment::after_mutation() const {
  if (audit_ && !audit()) throw std::logic_error("fragment audit failed");
}

GrowthResult grow_fragment(const MetricSpace& seed, const std::vector<Rational>& grid, std::size_t k,
                           std::size_t rounds, std::uint64_t rng_seed, std::size_t budget) {
  GrowthResult out{UrysohnFragment(seed, budget), true, 0};
  std::mt19937_64 rng(rng_seed);
  for (std::size_t r = 0; r < rounds; ++r) {
    MetricSpace snapshot = out.fragment.space();
    std::vector<std::size_t> base(snapshot.size());
    std::iota(base.begin(), base.end(), std::size_t(0));
    std::vector<std::pair<std::vector<std::size_t>, std::vector<Rational>>> tasks;
    for_each_admissible_profile(snapshot, base, grid, k, [&](const auto& subset, const auto& profile) {
      tasks.emplace_back(subset, profile);
      return true;
    });
    std::shuffle(tasks.begin(), tasks.end(), rng);
    for (const auto& [subset, profile] : tasks) {
      if (out.fragment.find_realization(subset, profile)) continue;
      if (out.fragment.size() >= out.fragment.budget()) {
        out.complete = false;
        return out;
      }
      out.fragment.add_controlled_point(subset, profile);
    }
    out.rounds_completed = r + 1;
  }
  return out;
}

}  // namespace urysohn
