#include "urysohn/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

#include "urysohn/quotient.hpp"

namespace urysohn {

StepFunction::StepFunction(std::vector<Rational> b, std::vector<std::size_t> v)
    : breakpoints(std::move(b)), values(std::move(v)) {
  if (breakpoints.size() < 2 || values.size() + 1 != breakpoints.size())
    throw std::invalid_argument("step function needs k+1 breakpoints for k values");
  if (breakpoints.front() != Rational(0) || breakpoints.back() != Rational(1))
    throw std::invalid_argument("step function breakpoints must run from 0 to 1");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw std::invalid_argument("step function breakpoints must increase strictly");
}

std::size_t StepFunction::operator()(const Rational& t) const {
  if (t < Rational(0) || !(t < Rational(1))) throw std::out_of_range("step function evaluated outside [0,1)");
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  return values[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

StepFunction StepFunction::simplified() const {
  StepFunction s;
  s.breakpoints.push_back(breakpoints.front());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!s.values.empty() && s.values.back() == values[i]) {
      s.breakpoints.back() = breakpoints[i + 1];
      continue;
    }
    s.values.push_back(values[i]);
    s.breakpoints.push_back(breakpoints[i + 1]);
  }
  return s;
}

std::vector<Piece> common_refinement(const std::vector<const StepFunction*>& fs) {
  std::vector<Rational> cuts;
  for (const auto* f : fs) cuts.insert(cuts.end(), f->breakpoints.begin(), f->breakpoints.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Piece> out;
  std::vector<std::size_t> at(fs.size(), 0);  // current interval of each function
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    Piece p{cuts[c], cuts[c + 1], {}};
    for (std::size_t k = 0; k < fs.size(); ++k) {
      while (!(cuts[c] < fs[k]->breakpoints[at[k] + 1])) ++at[k];
      p.values.push_back(fs[k]->values[at[k]]);
    }
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

void check_target(const StepFunction& f, std::size_t size, const char* what) {
  for (auto v : f.values)
    if (v >= size) throw std::invalid_argument(std::string(what) + ": value " + std::to_string(v) + " outside the target");
}

}  // namespace

Rational me_lambda(const StepFunction& f, const StepFunction& g, const MetricSpace& X, const Rational& lambda) {
  if (lambda.sign() <= 0) throw std::invalid_argument("me_lambda: lambda must be positive");
  check_target(f, X.size(), "me_lambda");
  check_target(g, X.size(), "me_lambda");

  // Mass at each distance level; m(eps) is the mass strictly above eps.
  std::map<Rational, Rational> mass{{Rational(0), Rational(0)}};
  for (const auto& p : common_refinement({&f, &g})) mass[X(p.values[0], p.values[1])] += p.length();

  std::vector<std::pair<Rational, Rational>> levels(mass.begin(), mass.end());
  Rational above(0);
  for (const auto& [d, m] : levels) above += m;
  // On [D_j, D_{j+1}) the condition m < lambda eps reads eps > M_j / lambda.
  for (std::size_t j = 0; j < levels.size(); ++j) {
    above -= levels[j].second;
    Rational candidate = std::max(levels[j].first, above / lambda);
    if (j + 1 == levels.size() || candidate < levels[j + 1].first) return candidate;
  }
  return levels.back().first;  // unreachable: the last level always qualifies
}

FiniteGroup::FiniteGroup(const std::vector<PermutationIsometry>& generators, std::size_t degree)
    : degree_(degree), elements_(permutation_closure(generators, degree)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i].images, i);
}

FiniteGroup FiniteGroup::cyclic(std::size_t k) {
  if (k == 0) throw std::invalid_argument("cyclic group of order 0");
  PermutationIsometry r;
  for (std::size_t i = 0; i < k; ++i) r.images.push_back((i + 1) % k);
  FiniteGroup G({r}, k);
  // Reorder so that element i is the rotation by i.
  G.elements_.clear();
  G.index_.clear();
  PermutationIsometry p = PermutationIsometry::identity(k);
  for (std::size_t i = 0; i < k; ++i, p = r * p) {
    G.index_.emplace(p.images, i);
    G.elements_.push_back(p);
  }
  return G;
}

std::size_t FiniteGroup::index_of(const PermutationIsometry& p) const {
  auto it = index_.find(p.images);
  if (it == index_.end()) throw std::invalid_argument("permutation is not a group element");
  return it->second;
}

std::size_t FiniteGroup::multiply(std::size_t a, std::size_t b) const { return index_of(elements_.at(a) * elements_.at(b)); }

std::size_t FiniteGroup::inverse(std::size_t a) const { return index_of(elements_.at(a).inverse()); }

ActionCheck hm_action_isometry_check(const FiniteGroup& group, const MetricSpace& X, const StepFunction& g,
                                     const StepFunction& f1, const StepFunction& f2, const Rational& lambda) {
  if (group.degree() != X.size()) throw std::invalid_argument("hm_action_isometry_check: group degree differs from |X|");
  for (std::size_t e = 0; e < group.order(); ++e)
    if (!is_isometry(X, group[e]))
      throw std::invalid_argument("hm_action_isometry_check: group element " + std::to_string(e) +
                                  " is not an isometry");
  check_target(g, group.order(), "hm_action_isometry_check");

  auto act = [&](const StepFunction& f) {
    StepFunction out;
    out.breakpoints.push_back(Rational(0));
    for (const auto& p : common_refinement({&g, &f})) {
      out.values.push_back(group[p.values[0]](p.values[1]));
      out.breakpoints.push_back(p.to);
    }
    return out;
  };
  ActionCheck r;
  r.rhs = me_lambda(f1, f2, X, lambda);
  r.lhs = me_lambda(act(f1), act(f2), X, lambda);
  r.equal = r.lhs == r.rhs;
  return r;
}

UniformityCheck uniformity_domination_check(const FiniteGroup& group, const StepFunction& f, const StepFunction& g,
                                            const std::vector<std::size_t>& V) {
  if (std::find(V.begin(), V.end(), std::size_t(0)) == V.end())
    throw std::invalid_argument("uniformity_domination_check: V must contain the identity");
  check_target(f, group.order(), "uniformity_domination_check");
  check_target(g, group.order(), "uniformity_domination_check");
  UniformityCheck r;
  for (const auto& p : common_refinement({&f, &g})) {
    std::size_t q = group.multiply(p.values[0], group.inverse(p.values[1]));
    if (std::find(V.begin(), V.end(), q) == V.end()) r.lhs += p.length();
    if (p.values[0] != p.values[1]) r.rhs += p.length();
  }
  r.pass = r.lhs <= r.rhs;
  return r;
}

namespace {

constexpr std::int64_t unreachable = std::numeric_limits<std::int64_t>::max();

// Fewest coordinate changes bringing the value counts into A. Replacing the
// largest values by 0 (or the smallest by k-1) is optimal.
std::int64_t changes_from_counts(const std::vector<std::int64_t>& counts, std::size_t k, const ThresholdEvent& A) {
  std::int64_t n = 0, sum = 0;
  for (std::size_t v = 0; v < k; ++v) {
    n += counts[v];
    sum += counts[v] * static_cast<std::int64_t>(v);
  }
  const auto top = static_cast<std::int64_t>(k) - 1;
  std::int64_t changes = 0;
  if (A.direction == ThresholdEvent::Direction::at_most) {
    if (A.threshold < 0) return unreachable;
    for (std::int64_t v = top; v > 0 && sum > A.threshold; --v) {
      std::int64_t need = (sum - A.threshold + v - 1) / v;
      std::int64_t use = std::min(need, counts[static_cast<std::size_t>(v)]);
      sum -= use * v;
      changes += use;
    }
  } else {
    if (A.threshold > n * top) return unreachable;
    for (std::int64_t v = 0; v < top && sum < A.threshold; ++v) {
      std::int64_t gain = top - v;
      std::int64_t need = (A.threshold - sum + gain - 1) / gain;
      std::int64_t use = std::min(need, counts[static_cast<std::size_t>(v)]);
      sum += use * gain;
      changes += use;
    }
  }
  return changes;
}

void check_sample(const HammingSample& hs) {
  if (hs.weights.empty()) throw std::invalid_argument("hamming sample: empty base space");
  Rational total(0);
  for (const auto& w : hs.weights) {
    if (w.sign() <= 0) throw std::invalid_argument("hamming sample: weights must be positive");
    total += w;
  }
  if (total != Rational(1)) throw std::invalid_argument("hamming sample: weights must sum to 1");
}

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_rational to_mp(const Rational& r) { return cpp_rational(cpp_int(r.num()), cpp_int(r.den())); }

std::string mp_str(const cpp_rational& r) {
  auto num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

// P(sum <= t) for n bits with P(1) = p.
cpp_rational binomial_cdf(std::size_t n, const cpp_rational& p, std::int64_t t) {
  if (t < 0) return 0;
  cpp_rational q = 1 - p, total = 0;
  cpp_int choose = 1;
  const auto last = std::min<std::int64_t>(t, static_cast<std::int64_t>(n));
  for (std::int64_t i = 0; i <= last; ++i) {
    cpp_rational term = choose;
    term *= pow(numerator(p), static_cast<unsigned>(i)) * pow(numerator(q), static_cast<unsigned>(n - i));
    term /= pow(denominator(p), static_cast<unsigned>(i)) * pow(denominator(q), static_cast<unsigned>(n - i));
    total += term;
    choose = choose * (static_cast<std::int64_t>(n) - i) / (i + 1);
  }
  return total;
}

// P(A) for a threshold event on n bits.
cpp_rational binomial_event(std::size_t n, const cpp_rational& p, const ThresholdEvent& A) {
  if (A.direction == ThresholdEvent::Direction::at_most) return binomial_cdf(n, p, A.threshold);
  return 1 - binomial_cdf(n, p, A.threshold - 1);
}

}  // namespace

std::int64_t changes_to_event(const std::vector<std::size_t>& y, std::size_t k, const ThresholdEvent& A) {
  std::vector<std::int64_t> counts(k, 0);
  for (auto v : y) {
    if (v >= k) throw std::invalid_argument("changes_to_event: coordinate outside the base space");
    ++counts[v];
  }
  return changes_from_counts(counts, k, A);
}

std::string binomial_cdf_exact(std::size_t n, const Rational& p, std::int64_t t) {
  return mp_str(binomial_cdf(n, to_mp(p), t));
}

ConcentrationResult hamming_concentration(const HammingSample& hs, const ThresholdEvent& A, const Rational& eps,
                                          std::uint64_t samples, bool exact, unsigned jobs, unsigned shards) {
  check_sample(hs);
  if (eps.sign() < 0) throw std::invalid_argument("hamming_concentration: eps must be non-negative");
  if (shards == 0) throw std::invalid_argument("hamming_concentration: need at least one shard");
  const std::size_t k = hs.weights.size();
  const auto n = static_cast<std::int64_t>(hs.n);

  ConcentrationResult r;
  r.samples = samples;
  r.shift = std::min<std::int64_t>((eps * Rational(n)).floor(), n);
  const double e = eps.to_double();
  r.oracle_bound = 1.0 - std::exp(-2.0 * e * e * static_cast<double>(n));

  if (exact && k == 2) {
    auto p = to_mp(hs.weights[1]);
    ThresholdEvent shifted = A;
    shifted.threshold += A.direction == ThresholdEvent::Direction::at_most ? r.shift : -r.shift;
    auto mu_a = binomial_event(hs.n, p, A);
    // An empty A stays empty under enlargement.
    bool empty = A.direction == ThresholdEvent::Direction::at_most ? A.threshold < 0 : A.threshold > n;
    auto mu_ae = empty ? cpp_rational(0) : binomial_event(hs.n, p, shifted);
    r.mu_A_exact = mp_str(mu_a);
    r.mu_A_eps_exact = mp_str(mu_ae);
    r.mu_A_exact_value = mu_a.convert_to<double>();
    r.mu_A_eps_exact_value = mu_ae.convert_to<double>();
  }

  // Weights as integer cut points on a common denominator.
  std::int64_t L = 1;
  for (const auto& w : hs.weights) L = lcm_checked(L, w.den());
  std::vector<std::uint64_t> cumulative;
  std::uint64_t acc = 0;
  for (const auto& w : hs.weights) {
    acc += static_cast<std::uint64_t>((w * Rational(L)).num());
    cumulative.push_back(acc);
  }

  std::vector<std::uint64_t> in_a(shards, 0), in_ae(shards, 0);
  auto run_shard = [&](unsigned s) {
    std::uint64_t count = samples / shards + (s < samples % shards ? 1 : 0);
    std::mt19937_64 rng(split_seed(hs.seed, s));
    std::uniform_int_distribution<std::uint64_t> unit(0, static_cast<std::uint64_t>(L) - 1);
    std::vector<std::int64_t> counts(k);
    for (std::uint64_t i = 0; i < count; ++i) {
      std::fill(counts.begin(), counts.end(), 0);
      for (std::int64_t c = 0; c < n; ++c) {
        auto u = unit(rng);
        ++counts[static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                          cumulative.begin())];
      }
      auto d = changes_from_counts(counts, k, A);
      in_a[s] += d == 0;
      in_ae[s] += d <= r.shift;
    }
  };
  jobs = std::max(1u, std::min(jobs, shards));
  if (jobs == 1) {
    for (unsigned s = 0; s < shards; ++s) run_shard(s);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back([&, j] {
        for (unsigned s = j; s < shards; s += jobs) run_shard(s);
      });
    for (auto& t : pool) t.join();
  }
  std::uint64_t a = 0, ae = 0;
  for (unsigned s = 0; s < shards; ++s) {
    a += in_a[s];
    ae += in_ae[s];
  }
  if (samples > 0) {
    r.mu_A_est = static_cast<double>(a) / static_cast<double>(samples);
    r.mu_A_eps_est = static_cast<double>(ae) / static_cast<double>(samples);
  }
  return r;
}

}  // namespace urysohn
