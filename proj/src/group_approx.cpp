#include "urysohn/group_approx.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <queue>
#include <set>
#include <unordered_map>

namespace urysohn {

Rational default_xi_value(const MetricSpace& X) {
  auto least = X.min_positive_distance();
  if (!least) return Rational(1);
  Rational half = X.diameter() / Rational(2);
  return std::max(half, *least);
}

OrbitMetric::OrbitMetric(const MetricSpace& X, const std::vector<PermutationIsometry>& gens,
                         const std::vector<std::size_t>& points, const Rational& epsilon, const OrbitOptions& opts)
    : m_(gens.size()),
      n_(points.size()),
      base_(X),
      gens_(gens),
      points_(points),
      epsilon_(epsilon),
      perturbation_(epsilon / Rational(3)),
      fragment_(X, opts.budget) {
  if (epsilon <= Rational(0)) throw std::invalid_argument("orbit metric: epsilon must be positive");
  if (n_ == 0) throw std::invalid_argument("orbit metric: at least one point is required");
  for (auto p : points_)
    if (p >= X.size()) throw std::out_of_range("orbit metric: point outside the space");
  for (const auto& g : gens_)
    if (!is_isometry(X, g)) throw std::invalid_argument("orbit metric: generator is not an isometry of X");

  if (opts.reuse_point) {
    xi_ = points_[0];
    xi_value_ = Rational(0);
  } else {
    xi_value_ = opts.xi_value.value_or(default_xi_value(X));
    if (xi_value_ <= Rational(0) || Rational(2) * xi_value_ < X.diameter())
      throw std::invalid_argument("orbit metric: constant xi distance " + xi_value_.str() +
                                  " is not admissible (needs 0 < c and diam <= 2c)");
    xi_ = fragment_.add_point(std::vector<Rational>(X.size(), xi_value_), "xi");
  }
  for (const auto& g : gens_) fragment_.add_generator(g);
  for (auto p : points_) {
    auto k = fragment_.add_generator();
    fragment_.seed_map(k, xi_, p);
  }

  words_ = ball(rank(), 4);
  raw_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    index_.emplace(words_[i], i);
    raw_.push_back(evaluate(words_[i]));
  }
}

std::size_t OrbitMetric::orbit_point(const Word& w) {
  if (w.is_identity()) return xi_;
  if (auto it = orbit_cache_.find(w); it != orbit_cache_.end()) return it->second;
  if (w.rank() > rank()) throw std::out_of_range("orbit metric: word uses an unknown generator");
  const auto& letters = w.letters();
  Word rest = Word::reduce(std::vector<Letter>(letters.begin() + 1, letters.end()));
  std::size_t p = orbit_point(rest);
  Letter a = letters.front();
  std::size_t q;
  try {
    q = fragment_.apply(generator_of(a), is_inverse(a) ? Direction::inverse : Direction::forward, p);
  } catch (const FragmentBudgetExceeded& e) {
    throw OrbitBudgetExceeded(w, e.budget());
  }
  orbit_cache_.emplace(w, q);
  return q;
}

Rational OrbitMetric::evaluate(const Word& w) { return fragment_.distance(orbit_point(w), xi_); }

const Rational& OrbitMetric::raw(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) throw std::out_of_range("orbit metric: " + w.str() + " is outside ball(4)");
  return raw_[it->second];
}

Rational OrbitMetric::value(const Word& w) const {
  const Rational& r = raw(w);
  return w.is_identity() ? r : r + perturbation_;
}

Rational OrbitMetric::distance(const Word& u, const Word& v) const { return value(u.inverse() * v); }

bool OrbitMetric::from_fragment(const Word& w) const {
  raw(w);
  return !w.is_identity();
}

ApproxParameters parameters(const std::vector<Rational>& perturbed) {
  if (perturbed.empty()) throw std::invalid_argument("parameters: no values");
  ApproxParameters p;
  p.delta = *std::min_element(perturbed.begin(), perturbed.end());
  p.Delta = *std::max_element(perturbed.begin(), perturbed.end());
  if (p.delta <= Rational(0)) throw std::invalid_argument("parameters: values must be positive");
  p.N = static_cast<std::size_t>(4 * (p.Delta / p.delta).floor() + 4);
  return p;
}

ApproxParameters parameters(const OrbitMetric& om) {
  const auto& words = om.words();
  if (words.size() < 2) throw std::invalid_argument("parameters: no generators");
  std::vector<Rational> values;
  values.reserve(words.size() - 1);
  for (std::size_t i = 1; i < words.size(); ++i) values.push_back(om.value(words[i]));
  return parameters(values);
}

namespace {

std::vector<std::pair<Word, Rational>> orbit_edges(const OrbitMetric& om) {
  std::vector<std::pair<Word, Rational>> out;
  const auto& words = om.words();
  for (std::size_t i = 1; i < words.size(); ++i) out.emplace_back(words[i], om.value(words[i]));
  return out;
}

}  // namespace

QuotientMetric::QuotientMetric(std::shared_ptr<const PermutationQuotient> Q, const OrbitMetric& om)
    : Q_(std::move(Q)), perturbation_(om.perturbation()) {
  if (Q_->rank() != om.rank()) throw QuotientError("quotient metric: rank mismatch with the orbit metric");
  build(orbit_edges(om));
}

QuotientMetric::QuotientMetric(std::shared_ptr<const PermutationQuotient> Q,
                               const std::vector<std::pair<Word, Rational>>& edges, const Rational& perturbation)
    : Q_(std::move(Q)), perturbation_(perturbation) {
  build(edges);
}

void QuotientMetric::build(const std::vector<std::pair<Word, Rational>>& edge_words) {
  if (!Q_->materialized()) throw QuotientError("quotient metric: quotient not materialized");
  // Cheapest word per group element reached by one edge. Inverse words carry
  // equal weights, so one direction per word suffices.
  std::map<Word, Rational> weight(edge_words.begin(), edge_words.end());
  std::unordered_map<Index, std::pair<Rational, const Word*>> best;
  for (const auto& [word, w0] : weight) {
    if (word.is_identity()) continue;
    if (w0 <= Rational(0)) throw std::invalid_argument("quotient metric: edge weights must be positive");
    Index s = Q_->image(word);
    if (s == 0) continue;
    Rational w = w0;
    if (auto inv = weight.find(word.inverse()); inv != weight.end()) {
      assert(inv->second == w0);
      w = std::min(w, inv->second);
    }
    auto it = best.find(s);
    if (it == best.end()) {
      best.emplace(s, std::pair{w, &word});
    } else if (w < it->second.first) {
      it->second = {w, &word};
    }
  }
  scale_ = perturbation_.den();
  for (const auto& [s, e] : best) scale_ = lcm_checked(scale_, e.first.den());
  std::vector<std::pair<std::int64_t, const std::vector<Letter>*>> edges;
  edges.reserve(best.size());
  for (const auto& [s, e] : best) {
    Rational scaled = e.first * Rational(scale_);
    edges.emplace_back(scaled.num(), &e.second->letters());
  }
  // Deterministic edge order.
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : *a.second < *b.second;
  });
  edges_ = edges.size();

  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
  dist_.assign(Q_->order(), inf);
  using Item = std::pair<std::int64_t, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist_[0] = 0;
  heap.emplace(0, 0);
  while (!heap.empty()) {
    auto [d, q] = heap.top();
    heap.pop();
    if (d != dist_[q]) continue;
    for (const auto& [w, letters] : edges) {
      Index r = q;
      for (Letter l : *letters) r = Q_->rmul(r, l);
      std::int64_t nd;
      if (__builtin_add_overflow(d, w, &nd)) throw RationalOverflow("quotient metric: path length overflow");
      if (nd < dist_[r]) {
        dist_[r] = nd;
        heap.emplace(nd, r);
      }
    }
  }
  for (auto d : dist_)
    if (d == inf) throw std::logic_error("quotient metric: disconnected Cayley graph");
}

Rational QuotientMetric::distance(Index p, Index q) const {
  if (p == q) return Rational(0);
  return rho(p, q) + perturbation_;
}

MetricSpace QuotientMetric::subspace(const std::vector<Index>& elements) const {
  const std::size_t k = elements.size();
  DistanceMatrix<Rational> d(k, k);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < k; ++a) {
    labels.push_back("q" + std::to_string(elements[a]));
    d(a, a) = Rational(0);
    for (std::size_t b = a + 1; b < k; ++b) d(a, b) = d(b, a) = distance(elements[a], elements[b]);
  }
  return MetricSpace::trusted(std::move(d), std::move(labels));
}

MetricSpace quotient_metric(std::shared_ptr<const PermutationQuotient> Q, const OrbitMetric& om, std::size_t N) {
  auto verdict = kernel_check(*Q, N);
  if (!verdict.passed)
    throw QuotientError("quotient metric: kernel meets ball(" + std::to_string(N) + ") at " +
                        verdict.first_killed->str());
  QuotientMetric qm(Q, om);
  std::vector<QuotientMetric::Index> all(Q->order());
  for (std::size_t q = 0; q < all.size(); ++q) all[q] = static_cast<QuotientMetric::Index>(q);
  return qm.subspace(all);
}

OrbitClosure orbit_closure_quotient(OrbitMetric& om, std::size_t max_points, std::size_t cap) {
  OrbitClosure out;
  auto& frag = om.fragment();
  try {
    for (std::size_t p = 0; p < frag.size(); ++p) {
      for (std::size_t k = 0; k < frag.generator_count(); ++k) {
        frag.apply(k, Direction::forward, p);
        frag.apply(k, Direction::inverse, p);
      }
      if (frag.size() > max_points) {
        out.points = frag.size();
        out.failure = "orbit closure exceeded " + std::to_string(max_points) + " points";
        return out;
      }
    }
  } catch (const FragmentBudgetExceeded& e) {
    out.points = frag.size();
    out.failure = e.what();
    return out;
  }
  out.points = frag.size();
  std::vector<PermutationIsometry> perms;
  for (std::size_t k = 0; k < frag.generator_count(); ++k) {
    PermutationIsometry g;
    for (std::size_t p = 0; p < frag.size(); ++p) g.images.push_back(*frag.generator(k).image(p));
    perms.push_back(std::move(g));
  }
  PermutationQuotient Q(frag.size(), std::move(perms));
  if (!Q.materialize(cap)) {
    out.failure = "orbit closure group exceeds " + std::to_string(cap) + " elements";
    return out;
  }
  out.quotient = std::move(Q);
  return out;
}

Completion completion_quotient(OrbitMetric& om, std::size_t radius, std::size_t cap) {
  Completion out;
  const auto& frag = om.fragment();
  std::vector<std::size_t> omega;
  if (radius >= 4) {
    omega.resize(frag.size());
    for (std::size_t p = 0; p < omega.size(); ++p) omega[p] = p;
  } else {
    std::set<std::size_t> reached;
    for (const auto& w : ball(om.rank(), radius)) reached.insert(om.orbit_point(w));
    omega.assign(reached.begin(), reached.end());
  }
  const std::size_t n = omega.size();
  out.points = n;
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> local(frag.size(), none);
  for (std::size_t i = 0; i < n; ++i) local[omega[i]] = i;
  auto D = [&](std::size_t a, std::size_t b) { return frag.distance(omega[a], omega[b]); };

  std::vector<PermutationIsometry> perms;
  for (std::size_t k = 0; k < frag.generator_count(); ++k) {
    std::vector<std::size_t> img(n, none), pre(n, none);
    std::vector<std::pair<std::size_t, std::size_t>> matched;
    for (auto [a, b] : frag.generator(k).pairs()) {
      if (local[a] == none || local[b] == none) continue;
      img[local[a]] = local[b];
      pre[local[b]] = local[a];
      matched.emplace_back(local[a], local[b]);
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (img[p] != none) continue;
      std::size_t target = none;
      Rational least;
      for (std::size_t t = 0; t < n; ++t) {
        if (pre[t] != none) continue;
        Rational worst(0);
        for (auto [a, b] : matched) {
          worst = std::max(worst, abs(D(p, a) - D(t, b)));
          if (target != none && worst >= least) break;
        }
        if (target == none || worst < least) {
          target = t;
          least = worst;
        }
      }
      img[p] = target;
      pre[target] = p;
      matched.emplace_back(p, target);
      out.distortion = std::max(out.distortion, least);
    }
    perms.push_back({std::move(img)});
  }
  PermutationQuotient Q(n, std::move(perms));
  if (!Q.materialize(cap)) {
    out.failure = "group on " + std::to_string(n) + " points exceeds " + std::to_string(cap) + " elements";
    return out;
  }
  out.quotient = std::move(Q);
  return out;
}

std::vector<std::string> family_index(std::size_t m, std::size_t n) {
  std::vector<std::string> out;
  if (m == 0) {
    for (std::size_t i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
    return out;
  }
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t i = 1; i <= n; ++i) out.push_back("g" + std::to_string(j) + "x" + std::to_string(i));
  return out;
}

std::vector<Word> family_words(std::size_t m, std::size_t n) {
  std::vector<Word> out;
  if (m == 0) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(Word::generator(i));
    return out;
  }
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) out.push_back(Word::generator(j) * Word::generator(m + i));
  return out;
}

IndexedFamily original_family(const MetricSpace& X, const std::vector<PermutationIsometry>& gens,
                              const std::vector<std::size_t>& points) {
  std::vector<std::size_t> map;
  if (gens.empty()) {
    map = points;
  } else {
    for (const auto& g : gens)
      for (auto x : points) map.push_back(g(x));
  }
  return {family_index(gens.size(), points.size()), X, std::move(map)};
}

Certificate certify(const IndexedFamily& original, const ApproximationResult& result, const Rational& epsilon) {
  auto check = epsilon_isometry_check(original, result.family(), epsilon);
  return {check.within, check.max_deviation, check.worst_pair};
}

namespace {

using Index = PermutationQuotient::Index;

ApproximationResult evaluate_candidate(const OrbitMetric& om, const ApproxParameters& params,
                                       std::shared_ptr<const PermutationQuotient> Q, const std::string& strategy,
                                       const ApproxOptions& opts, const IndexedFamily& original) {
  ApproximationResult r;
  r.epsilon = om.epsilon();
  r.params = params;
  r.strategy = strategy;
  r.quotient = Q;
  r.quotient_degree = Q->degree();
  r.quotient_order = Q->order();
  r.kernel_free_radius = kernel_free_radius(*Q);
  r.N_honored = r.kernel_free_radius >= params.N;

  QuotientMetric qm(Q, om);
  auto b2 = ball(om.rank(), 2);
  std::vector<Index> b2_images;
  for (const auto& u : b2) b2_images.push_back(Q->image(u));
  r.isometric_on_ball2 = true;
  for (std::size_t a = 0; a < b2.size() && r.isometric_on_ball2; ++a)
    for (std::size_t b = a + 1; b < b2.size(); ++b)
      if (qm.rho(b2_images[a], b2_images[b]) != om.distance(b2[a], b2[b])) {
        r.isometric_on_ball2 = false;
        break;
      }

  std::vector<Index> family_el, marked_el;
  for (const auto& w : family_words(om.m(), om.n())) family_el.push_back(Q->image(w));
  for (std::size_t i = 0; i < om.n(); ++i) marked_el.push_back(Q->image(Word::generator(om.m() + i)));
  r.family_labels = family_index(om.m(), om.n());

  if (Q->order() <= opts.materialize_limit) {
    r.space_scope = "quotient";
    std::vector<Index> all(Q->order());
    for (std::size_t q = 0; q < all.size(); ++q) all[q] = static_cast<Index>(q);
    r.space = qm.subspace(all);
    r.family_points.assign(family_el.begin(), family_el.end());
    r.points.assign(marked_el.begin(), marked_el.end());
    for (std::size_t j = 0; j < om.m(); ++j) {
      Index g = Q->image(Word::generator(j));
      PermutationIsometry t;
      for (std::size_t q = 0; q < all.size(); ++q) t.images.push_back(Q->multiply(g, static_cast<Index>(q)));
      r.generators.push_back(std::move(t));
    }
  } else {
    r.space_scope = "family";
    std::set<Index> chosen(family_el.begin(), family_el.end());
    chosen.insert(marked_el.begin(), marked_el.end());
    std::vector<Index> sorted(chosen.begin(), chosen.end());
    r.space = qm.subspace(sorted);
    auto pos = [&](Index q) {
      return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), q) - sorted.begin());
    };
    for (auto q : family_el) r.family_points.push_back(pos(q));
    for (auto q : marked_el) r.points.push_back(pos(q));
  }
  r.certificate = certify(original, r, om.epsilon());
  return r;
}

std::string describe(const ApproximationResult& r) {
  return r.strategy + ": degree " + std::to_string(r.quotient_degree) + ", order " +
         std::to_string(r.quotient_order) + ", kernel-free radius " + std::to_string(r.kernel_free_radius) +
         ", deviation " + r.certificate->deviation.str() + (r.success() ? " (pass)" : " (fail)");
}


std::vector<OrbitOptions> xi_profiles(const MetricSpace& X, const ApproxOptions& opts) {
  std::vector<OrbitOptions> out{opts.orbit};
  if (!opts.vary_xi || opts.orbit.xi_value || opts.orbit.reuse_point) return out;
  Rational c = default_xi_value(X);
  OrbitOptions wide = opts.orbit;
  wide.xi_value = std::max(X.diameter(), Rational(1));
  if (*wide.xi_value != c) out.push_back(wide);
  OrbitOptions reuse = opts.orbit;
  reuse.reuse_point = true;
  out.push_back(reuse);
  OrbitOptions shifted = opts.orbit;
  shifted.xi_value = c + Rational(1, 2);
  if (*shifted.xi_value != *wide.xi_value) out.push_back(shifted);
  return out;
}

}  // namespace

ApproximationResult approximate_isometries(const MetricSpace& X, const std::vector<PermutationIsometry>& gens,
                                           const std::vector<std::size_t>& points, const Rational& epsilon,
                                           const ApproxOptions& opts) {
  auto original = original_family(X, gens, points);
  std::vector<std::string> log;
  std::optional<ApproximationResult> best;
  auto consider = [&](ApproximationResult r, const OrbitMetric& om) {
    r.xi_value = om.xi_value();
    r.xi_reused = om.xi() < X.size();
    log.push_back(describe(r));
    bool better = !best || (r.success() && !best->success()) ||
                  (r.success() == best->success() && r.certificate->deviation < best->certificate->deviation);
    if (better) best = std::move(r);
    return best->success();
  };
  auto finish = [&]() {
    if (!best) {
      std::string why;
      for (const auto& l : log) why += "\n  " + l;
      throw QuotientError("approximate_isometries: no quotient could be built" + why);
    }
    best->log = log;
    return std::move(*best);
  };
  auto describe_xi = [&](const OrbitMetric& om, const ApproxParameters& params) {
    std::string where = om.xi() < X.size() ? "xi = x1" : "xi at distance " + om.xi_value().str();
    log.push_back("orbit fragment: " + std::to_string(om.fragment().size()) + " points, " + where);
    log.push_back("delta " + params.delta.str() + ", Delta " + params.Delta.str() + ", N " +
                  std::to_string(params.N));
  };

  const bool automatic = opts.strategy == QuotientStrategy::automatic;
  auto profiles = xi_profiles(X, opts);
  if (!automatic) profiles.resize(1);
  for (std::size_t pi = 0; pi < profiles.size(); ++pi) {
    OrbitMetric om(X, gens, points, epsilon, profiles[pi]);
    auto params = parameters(om);
    describe_xi(om, params);

    if (pi == 0 && (opts.strategy == QuotientStrategy::ball_perm || (automatic && om.rank() == 1))) {
      auto Q = std::make_shared<PermutationQuotient>(ball_perm_quotient(om.rank(), params.N));
      if (Q->materialize(opts.cap)) {
        if (consider(evaluate_candidate(om, params, Q, "ball_perm", opts, original), om)) return finish();
      } else {
        log.push_back("ball_perm: group generated on " + std::to_string(Q->degree()) + " words exceeds " +
                      std::to_string(opts.cap) + " elements");
      }
    }
    if (opts.strategy == QuotientStrategy::completion || automatic) {
      for (std::size_t radius = 4; radius >= 1; --radius) {
        std::string name = "completion(" + std::to_string(radius) + ")";
        auto c = completion_quotient(om, radius, opts.completion_cap);
        if (!c.quotient) {
          log.push_back(name + ": " + c.failure);
          continue;
        }
        auto Q = std::make_shared<PermutationQuotient>(std::move(*c.quotient));
        if (consider(evaluate_candidate(om, params, Q, name, opts, original), om)) return finish();
      }
    }
    if (pi == 0 && (opts.strategy == QuotientStrategy::orbit || automatic)) {
      // Grows the fragment, so it runs after the completions.
      auto closure = orbit_closure_quotient(om, opts.closure_points, opts.cap);
      if (closure.quotient) {
        auto Q = std::make_shared<PermutationQuotient>(std::move(*closure.quotient));
        if (consider(evaluate_candidate(om, params, Q, "orbit", opts, original), om)) return finish();
      } else {
        log.push_back("orbit: " + closure.failure);
      }
    }
  }

  if (opts.strategy == QuotientStrategy::random_search || automatic) {
    OrbitMetric om(X, gens, points, epsilon, profiles[0]);
    auto params = parameters(om);
    if (automatic) describe_xi(om, params);
    std::vector<std::size_t> degrees =
        automatic ? opts.search_degrees : std::vector<std::size_t>{opts.search.degree};
    for (auto degree : degrees) {
      RandomSearch rs = opts.search;
      rs.degree = degree;
      auto accept = [&](const PermutationQuotient& q) {
        return evaluate_candidate(om, params, std::make_shared<PermutationQuotient>(q), "", opts, original).success();
      };
      auto found = random_search(om.rank(), rs, opts.cap, accept, opts.jobs);
      std::string name = "random_search(" + std::to_string(degree) + ")";
      if (found.quotient) {
        auto Q = std::make_shared<PermutationQuotient>(std::move(*found.quotient));
        log.push_back(name + ": accepted attempt " + std::to_string(found.accepted_attempt));
        consider(evaluate_candidate(om, params, Q, name, opts, original), om);
        return finish();
      }
      log.push_back(name + ": no passing quotient in " + std::to_string(found.attempts_tried) + " attempts");
    }
  }
  return finish();
}

}  // namespace urysohn
