#include "urysohn/ramsey.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <thread>

namespace urysohn {

EmbeddingSpace::EmbeddingSpace(MetricSpace F, MetricSpace X)
    : F_(std::move(F)), X_(std::move(X)), embeddings_(enumerate_embeddings(F_, X_)) {}

Rational EmbeddingSpace::distance(std::size_t i, std::size_t j) const {
  const auto& a = embeddings_.at(i);
  const auto& b = embeddings_.at(j);
  Rational out(0);
  for (std::size_t x = 0; x < F_.size(); ++x) out = std::max(out, X_(a(x), b(x)));
  return out;
}

std::optional<std::size_t> EmbeddingSpace::index_of(const Embedding& e) const {
  auto it = std::lower_bound(embeddings_.begin(), embeddings_.end(), e);
  if (it == embeddings_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - embeddings_.begin());
}

MetricSpace EmbeddingSpace::space() const {
  const std::size_t n = size();
  DistanceMatrix<Rational> d = DistanceMatrix<Rational>::Zero(n, n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("e" + std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = distance(i, j);
  }
  return MetricSpace::trusted(std::move(d), std::move(labels));
}

std::vector<Embedding> embedding_ball(const EmbeddingSpace& es, const Embedding& center, const Rational& eps) {
  auto c = es.index_of(center);
  if (!c) throw std::invalid_argument("embedding_ball: center is not an embedding of this space");
  std::vector<Embedding> out;
  for (std::size_t k = 0; k < es.size(); ++k)
    if (es.distance(*c, k) <= eps) out.push_back(es[k]);
  return out;
}

RamseyDomain::RamseyDomain(const MetricSpace& F, const MetricSpace& X, RamseyMode mode) : mode_(mode), es_(F, X) {
  const std::size_t ne = es_.size();
  element_.resize(ne);
  if (mode_ == RamseyMode::embeddings) {
    for (std::size_t k = 0; k < ne; ++k) {
      element_[k] = k;
      representative_.push_back(k);
    }
  } else {
    std::map<std::vector<std::size_t>, std::size_t> seen;
    for (std::size_t k = 0; k < ne; ++k) {
      auto img = es_[k].map;
      std::sort(img.begin(), img.end());
      auto [it, fresh] = seen.emplace(std::move(img), representative_.size());
      if (fresh) representative_.push_back(k);
      element_[k] = it->second;
    }
  }
  const std::size_t n = size();
  dist_.assign(n * n, Rational(0));
  if (mode_ == RamseyMode::embeddings) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) dist_[a * n + b] = dist_[b * n + a] = es_.distance(a, b);
  } else {
    std::vector<std::optional<Rational>> best(n * n);
    for (std::size_t i = 0; i < ne; ++i)
      for (std::size_t j = 0; j < ne; ++j) {
        std::size_t a = element_[i], b = element_[j];
        if (a == b) continue;
        Rational d = es_.distance(i, j);
        auto& slot = best[a * n + b];
        if (!slot || d < *slot) slot = d;
      }
    for (std::size_t k = 0; k < n * n; ++k)
      if (best[k]) dist_[k] = *best[k];
  }
}

std::vector<std::size_t> RamseyDomain::image(std::size_t e) const {
  auto img = representative(e).map;
  std::sort(img.begin(), img.end());
  return img;
}

Rational RamseyDomain::distance(std::size_t a, std::size_t b) const { return dist_.at(a * size() + b); }

std::optional<std::size_t> RamseyDomain::element_of(const Embedding& e) const {
  auto k = es_.index_of(e);
  if (!k) return std::nullopt;
  return element_[*k];
}

namespace {

// Fixed-size bit set over domain elements.
class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t(1) << (i % 64); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }
  Bits& operator|=(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  void clear() { std::fill(w_.begin(), w_.end(), 0); }
  friend auto operator<=>(const Bits&, const Bits&) = default;

 private:
  std::vector<std::uint64_t> w_;
};

// Everything the search needs, in bit sets: the closed eps-ball of every
// element and, per G-embedding, the set of F-copies it contains.
struct SearchTables {
  std::size_t domain = 0;
  std::vector<Bits> ball;
  std::vector<Embedding> g_embeddings;
  std::vector<Bits> copies;               // one per distinct copy set
  std::vector<std::size_t> first_g;       // first G-embedding having that copy set
  std::vector<std::size_t> copy_of_g;     // G-embedding -> copy set index
};

SearchTables build_tables(const RamseyDomain& dom, const MetricSpace& F, const MetricSpace& G, const MetricSpace& X,
                          const Rational& eps) {
  SearchTables t;
  t.domain = dom.size();
  t.ball.assign(t.domain, Bits(t.domain));
  for (std::size_t a = 0; a < t.domain; ++a)
    for (std::size_t b = 0; b < t.domain; ++b)
      if (dom.distance(a, b) <= eps) t.ball[a].set(b);
  t.g_embeddings = enumerate_embeddings(G, X);
  auto f_in_g = enumerate_embeddings(F, G);
  std::map<Bits, std::size_t> seen;
  for (std::size_t k = 0; k < t.g_embeddings.size(); ++k) {
    const auto& j = t.g_embeddings[k];
    Bits s(t.domain);
    for (const auto& f : f_in_g) {
      Embedding composed{std::vector<std::size_t>(f.size())};
      for (std::size_t a = 0; a < f.size(); ++a) composed.map[a] = j(f(a));
      s.set(*dom.element_of(composed));
    }
    auto [it, fresh] = seen.emplace(s, t.copies.size());
    if (fresh) {
      t.copies.push_back(std::move(s));
      t.first_g.push_back(k);
    }
    t.copy_of_g.push_back(it->second);
  }
  return t;
}

// covered[k] = elements within eps of colour class k.
void covered_by(const SearchTables& t, const Coloring& c, std::size_t m, std::vector<Bits>& covered) {
  covered.assign(m, Bits(t.domain));
  for (std::size_t a = 0; a < t.domain; ++a) covered[c[a]] |= t.ball[a];
}

// Monochromatic up to eps: the copies sit inside one colour's neighbourhood.
bool is_good(const Bits& copies, const std::vector<Bits>& covered) {
  for (const auto& cov : covered)
    if (copies.subset_of(cov)) return true;
  return false;
}

std::optional<std::size_t> first_good(const SearchTables& t, const std::vector<Bits>& covered) {
  for (std::size_t s = 0; s < t.copies.size(); ++s)
    if (is_good(t.copies[s], covered)) return t.first_g[s];
  return std::nullopt;
}

std::size_t good_count(const SearchTables& t, const std::vector<Bits>& covered) {
  std::size_t n = 0;
  for (const auto& s : t.copies) n += is_good(s, covered);
  return n;
}

Coloring decode(std::uint64_t code, std::size_t m, std::size_t n) {
  // Lexicographic: element 0 is the most significant digit.
  Coloring c(n);
  for (std::size_t k = n; k-- > 0;) {
    c[k] = static_cast<unsigned>(code % m);
    code /= m;
  }
  return c;
}

}  // namespace

std::optional<Embedding> good_embedding(const MetricSpace& F, const MetricSpace& G, const MetricSpace& X,
                                        const Rational& eps, RamseyMode mode, const Coloring& coloring) {
  RamseyDomain dom(F, X, mode);
  if (coloring.size() != dom.size()) throw std::invalid_argument("good_embedding: coloring size differs from domain");
  auto t = build_tables(dom, F, G, X, eps);
  std::size_t m = 0;
  for (auto c : coloring) m = std::max<std::size_t>(m, c + 1);
  std::vector<Bits> covered;
  covered_by(t, coloring, std::max<std::size_t>(m, 1), covered);
  for (std::size_t k = 0; k < t.g_embeddings.size(); ++k)
    if (is_good(t.copies[t.copy_of_g[k]], covered)) return t.g_embeddings[k];
  return std::nullopt;
}

RamseyVerdict check_R(const MetricSpace& F, const MetricSpace& G, const MetricSpace& X, std::size_t m,
                      const Rational& eps, const RamseyOptions& opts) {
  if (m == 0) throw std::invalid_argument("check_R: at least one colour is required");
  if (eps < Rational(0)) throw std::invalid_argument("check_R: negative eps");
  RamseyVerdict v;
  v.mode = opts.mode;
  v.m = m;
  v.epsilon = eps;
  RamseyDomain dom(F, X, opts.mode);
  v.domain_size = dom.size();
  if (dom.size() == 0) {
    v.status = RamseyStatus::holds;
    v.note = "vacuous: F does not embed into X";
    return v;
  }
  auto t = build_tables(dom, F, G, X, eps);
  v.g_embeddings = t.g_embeddings.size();
  if (t.g_embeddings.empty()) {
    v.status = RamseyStatus::fails;
    v.bad_coloring = Coloring(dom.size(), 0);
    v.note = "vacuous: G does not embed into X";
    return v;
  }
  const std::size_t n = dom.size();
  std::vector<Bits> covered;

  if (m == 1) {
    covered_by(t, Coloring(n, 0), 1, covered);
    v.status = RamseyStatus::holds;
    v.good_embedding = t.g_embeddings[*first_good(t, covered)];
    v.colorings_examined = 1;
    v.embeddings_examined = t.copies.size();
    return v;
  }

  if (opts.search.kind == RamseySearch::Kind::exhaustive) {
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (total > opts.exhaustive_bound / m) throw RamseyDomainTooLarge(m, n);
      total *= m;
    }
    const unsigned jobs = std::max(1u, opts.jobs);
    std::atomic<std::uint64_t> first_bad{total};
    std::atomic<std::uint64_t> examined{0}, js{0};
    auto run = [&](std::uint64_t from, std::uint64_t to) {
      std::vector<Bits> cov;
      std::uint64_t local = 0, local_js = 0;
      for (std::uint64_t code = from; code < to && code < first_bad.load(); ++code) {
        covered_by(t, decode(code, m, n), m, cov);
        ++local;
        bool good = false;
        for (const auto& s : t.copies) {
          ++local_js;
          if (is_good(s, cov)) {
            good = true;
            break;
          }
        }
        if (!good) {
          std::uint64_t cur = first_bad.load();
          while (code < cur && !first_bad.compare_exchange_weak(cur, code)) {
          }
          break;
        }
      }
      examined += local;
      js += local_js;
    };
    std::vector<std::thread> pool;
    std::uint64_t chunk = (total + jobs - 1) / jobs;
    for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(run, k * chunk, std::min(total, (k + 1) * chunk));
    run(0, std::min(total, chunk));
    for (auto& th : pool) th.join();
    v.colorings_examined = examined.load();
    v.embeddings_examined = js.load();
    if (first_bad.load() < total) {
      v.status = RamseyStatus::fails;
      v.bad_coloring = decode(first_bad.load(), m, n);
    } else {
      v.status = RamseyStatus::holds;
      covered_by(t, Coloring(n, 0), m, covered);
      v.good_embedding = t.g_embeddings[*first_good(t, covered)];
    }
    return v;
  }

  // Adversarial: hill-climb on the number of good copy sets, one recolouring
  // at a time, with random restarts.
  std::mt19937_64 rng(opts.search.seed);
  std::uniform_int_distribution<std::size_t> pick_element(0, n - 1);
  std::uniform_int_distribution<unsigned> pick_color(0, static_cast<unsigned>(m - 1));
  for (std::size_t r = 0; r < std::max<std::size_t>(1, opts.search.restarts); ++r) {
    Coloring c(n);
    for (auto& x : c) x = pick_color(rng);
    covered_by(t, c, m, covered);
    std::size_t score = good_count(t, covered);
    ++v.colorings_examined;
    for (std::size_t it = 0; it < opts.search.iterations && score > 0; ++it) {
      std::size_t e = pick_element(rng);
      unsigned old = c[e];
      unsigned nc = pick_color(rng);
      if (nc == old) continue;
      c[e] = nc;
      covered_by(t, c, m, covered);
      std::size_t s = good_count(t, covered);
      ++v.colorings_examined;
      v.embeddings_examined += t.copies.size();
      if (s <= score) {
        score = s;  // sideways moves allowed
      } else {
        c[e] = old;
      }
    }
    if (score == 0) {
      v.status = RamseyStatus::fails;
      v.bad_coloring = c;
      return v;
    }
  }
  v.status = RamseyStatus::inconclusive;
  return v;
}

FlipWitness flip_coloring_witness(const MetricSpace& X, const MetricSpace& F, const Rational& eps) {
  if (F.size() != 2) throw std::invalid_argument("flip_coloring_witness: F must have exactly two points");
  EmbeddingSpace es(F, X);
  if (es.size() == 0)
    throw std::invalid_argument("flip_coloring_witness: the distance " + F(0, 1).str() + " does not occur in X");
  FlipWitness out;
  out.eps0 = *X.min_positive_distance();
  for (const auto& e : es.embeddings()) out.coloring.push_back(e(0) < e(1) ? 0u : 1u);
  out.refutes = eps < out.eps0;
  return out;
}

RdmVerdict rdm_finite_check(const MetricSpace& X, const std::vector<PermutationIsometry>& group,
                            const std::vector<std::vector<std::size_t>>& cover, const Rational& eps,
                            const std::vector<std::size_t>& K) {
  std::vector<bool> hit(X.size(), false);
  for (const auto& A : cover)
    for (auto a : A) {
      if (a >= X.size()) throw std::out_of_range("rdm_finite_check: cover point outside X");
      hit[a] = true;
    }
  for (std::size_t x = 0; x < X.size(); ++x)
    if (!hit[x]) throw std::invalid_argument("rdm_finite_check: not a cover, point " + std::to_string(x) + " missed");
  for (auto k : K)
    if (k >= X.size()) throw std::out_of_range("rdm_finite_check: K point outside X");
  for (const auto& g : group)
    if (!is_isometry(X, g)) throw std::invalid_argument("rdm_finite_check: group element is not an isometry");
  auto closed = permutation_closure(group, X.size());
  RdmVerdict out;
  out.group_order = closed.size();
  for (const auto& g : closed) {
    for (std::size_t c = 0; c < cover.size(); ++c) {
      bool inside = true;
      for (std::size_t i = 0; i < K.size() && inside; ++i) {
        inside = false;
        for (auto a : cover[c])
          if (X(g(K[i]), a) <= eps) {
            inside = true;
            break;
          }
      }
      if (inside) {
        out.holds = true;
        out.witness = g;
        out.cover_index = c;
        return out;
      }
    }
  }
  return out;
}

}  // namespace urysohn
