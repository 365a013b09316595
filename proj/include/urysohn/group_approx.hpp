#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "urysohn/embedding.hpp"
#include "urysohn/fragment.hpp"
#include "urysohn/free_group.hpp"
#include "urysohn/indexed_family.hpp"
#include "urysohn/metric_space.hpp"
#include "urysohn/quotient.hpp"

namespace urysohn {

class OrbitBudgetExceeded : public std::runtime_error {
 public:
  OrbitBudgetExceeded(const Word& w, std::size_t budget)
      : std::runtime_error("fragment budget of " + std::to_string(budget) + " points exhausted while evaluating " +
                           w.str()),
        word(w) {}
  Word word;
};

struct OrbitOptions {
  /// Constant distance from the base point xi to every point of X. Default
  /// max(diam/2, least positive distance), or 1 on a one-point space.
  std::optional<Rational> xi_value;
  /// Use x_1 itself as xi instead of adjoining a new point.
  bool reuse_point = false;
  std::size_t budget = UrysohnFragment::default_budget;
};

/// Default xi distance for a space.
Rational default_xi_value(const MetricSpace& X);

/// Left-invariant pseudometric d(u,v) = d(u(xi), v(xi)) on the free group
/// F_{m+n}, where g_1..g_m extend the given isometries of X and g_{m+i} sends
/// xi to x_i, all realized lazily inside a Urysohn fragment. Tabulated on
/// ball(4); `value` adds the perturbation eps/3 off the identity.
class OrbitMetric {
 public:
  OrbitMetric(const MetricSpace& X, const std::vector<PermutationIsometry>& gens,
              const std::vector<std::size_t>& points, const Rational& epsilon, const OrbitOptions& opts = {});

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t rank() const { return m_ + n_; }
  const Rational& epsilon() const { return epsilon_; }
  const Rational& perturbation() const { return perturbation_; }
  const Rational& xi_value() const { return xi_value_; }
  const MetricSpace& base() const { return base_; }
  const std::vector<std::size_t>& points() const { return points_; }
  const std::vector<PermutationIsometry>& isometries() const { return gens_; }

  /// ball(4), shortlex.
  const std::vector<Word>& words() const { return words_; }
  bool tabulated(const Word& w) const { return index_.count(w) != 0; }
  /// Unperturbed d(w, e) for w in ball(4).
  const Rational& raw(const Word& w) const;
  /// Perturbed d(w, e) for w in ball(4).
  Rational value(const Word& w) const;
  /// Perturbed d(u, v); u^-1 v must lie in ball(4).
  Rational distance(const Word& u, const Word& v) const;
  /// True when the table entry came from a fragment distance (false only for e).
  bool from_fragment(const Word& w) const;

  /// Unperturbed d(w, e) for any word, growing the fragment as needed.
  Rational evaluate(const Word& w);
  /// Fragment point w(xi).
  std::size_t orbit_point(const Word& w);

  std::size_t xi() const { return xi_; }
  const UrysohnFragment& fragment() const { return fragment_; }
  UrysohnFragment& fragment() { return fragment_; }

 private:
  std::size_t m_, n_;
  MetricSpace base_;
  std::vector<PermutationIsometry> gens_;
  std::vector<std::size_t> points_;
  Rational epsilon_, perturbation_, xi_value_;
  UrysohnFragment fragment_;
  std::size_t xi_ = 0;
  std::vector<Word> words_;
  std::map<Word, std::size_t> index_;
  std::vector<Rational> raw_;
  std::map<Word, std::size_t> orbit_cache_;
};

struct ApproxParameters {
  Rational delta;
  Rational Delta;
  std::size_t N = 0;
};

/// delta and Delta are the least and largest perturbed d(w,e) over
/// ball(4) \ {e} (the distances realized by pairs of ball(2));
/// N = 4 floor(Delta/delta) + 4.
ApproxParameters parameters(const OrbitMetric& om);
/// Same formula over an explicit list of perturbed values.
ApproxParameters parameters(const std::vector<Rational>& perturbed);

/// Shortest-path metric on a materialized quotient: Cayley graph with an edge
/// q -- q pi(a) of weight d'(a, e) for every a in ball(4) \ {e}. Distances are
/// kept from the identity only; left invariance gives the rest.
class QuotientMetric {
 public:
  using Index = PermutationQuotient::Index;

  QuotientMetric(std::shared_ptr<const PermutationQuotient> Q, const OrbitMetric& om);
  /// Explicit edge words and weights (weight of a word and of its inverse
  /// must agree); `perturbation` is added between distinct elements.
  QuotientMetric(std::shared_ptr<const PermutationQuotient> Q, const std::vector<std::pair<Word, Rational>>& edges,
                 const Rational& perturbation);

  const PermutationQuotient& quotient() const { return *Q_; }
  /// rho(e, q).
  Rational rho(Index q) const { return Rational(dist_[q], scale_); }
  Rational rho(Index p, Index q) const { return rho(Q_->multiply(Q_->inverse(p), q)); }
  /// rho + eps/3 between distinct elements.
  Rational distance(Index p, Index q) const;
  /// Distinct group elements reached by one edge.
  std::size_t edge_count() const { return edges_; }

  /// Restriction to the given elements, labelled "q<index>".
  MetricSpace subspace(const std::vector<Index>& elements) const;

 private:
  std::shared_ptr<const PermutationQuotient> Q_;
  Rational perturbation_;
  std::int64_t scale_ = 1;
  std::vector<std::int64_t> dist_;
  std::size_t edges_ = 0;

  void build(const std::vector<std::pair<Word, Rational>>& edges);
};

/// Full quotient metric space; requires kernel_check(Q, N) to pass.
MetricSpace quotient_metric(std::shared_ptr<const PermutationQuotient> Q, const OrbitMetric& om, std::size_t N);

/// Completes the fragment's partial isometries to permutations of a finite
/// invariant point set containing xi, by applying every generator in both
/// directions to every point until nothing new appears. The quotient is the
/// permutation group they generate.
struct OrbitClosure {
  std::optional<PermutationQuotient> quotient;
  std::size_t points = 0;
  std::string failure;
};
OrbitClosure orbit_closure_quotient(OrbitMetric& om, std::size_t max_points, std::size_t cap);

/// Completes each generator's partial isometry to a permutation of a finite
/// point set: the whole fragment for radius 4, otherwise the orbit of xi under
/// ball(radius). Pairs not lying inside the set are dropped. Unmatched points
/// are taken in index order and sent to the free target that distorts the
/// distances to the pairs matched so far the least (ties: smallest index).
/// The permutations need not be isometries; the certificate decides.
struct Completion {
  std::optional<PermutationQuotient> quotient;
  std::size_t points = 0;
  /// Largest distortion introduced by a completed pair.
  Rational distortion;
  std::string failure;
};
Completion completion_quotient(OrbitMetric& om, std::size_t radius, std::size_t cap);

/// Index labels of the family {g_j x_i}: "g<j>x<i>" for j = 1..m, i = 1..n,
/// or "x<i>" when m = 0.
std::vector<std::string> family_index(std::size_t m, std::size_t n);
/// Words g_j g_{m+i} (or g_i when m = 0) in family_index order.
std::vector<Word> family_words(std::size_t m, std::size_t n);
/// The family {g_j(x_i)} inside X.
IndexedFamily original_family(const MetricSpace& X, const std::vector<PermutationIsometry>& gens,
                              const std::vector<std::size_t>& points);

enum class QuotientStrategy { automatic, ball_perm, completion, orbit, random_search };

struct ApproxOptions {
  OrbitOptions orbit;
  QuotientStrategy strategy = QuotientStrategy::automatic;
  RandomSearch search{};
  /// Degrees tried by the automatic strategy after the orbit closure.
  std::vector<std::size_t> search_degrees{5, 6, 7, 8};
  std::size_t cap = 1'000'000;
  std::size_t closure_points = 512;
  /// Cap for groups generated by completions; larger ones are skipped.
  std::size_t completion_cap = 200'000;
  /// Without an explicit xi in `orbit`, the automatic strategy retries the
  /// completions with xi at distance max(diam, 1), with xi = x_1, and with xi
  /// at the default distance plus 1/2.
  bool vary_xi = true;
  /// Largest quotient returned as a full metric space.
  std::size_t materialize_limit = 1024;
  unsigned jobs = 1;
};

struct Certificate {
  bool pass = false;
  Rational deviation;
  std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
};

struct ApproximationResult {
  Rational epsilon;
  ApproxParameters params;
  std::string strategy;
  /// Base point used: a new point at distance xi_value, or x_1 itself.
  Rational xi_value;
  bool xi_reused = false;
  std::size_t quotient_degree = 0;
  std::size_t quotient_order = 0;
  /// Largest N with ball(N) meeting the kernel trivially.
  std::size_t kernel_free_radius = 0;
  bool N_honored = false;
  /// pi restricted to ball(2) is an isometry for (d', quotient metric).
  bool isometric_on_ball2 = false;

  /// "quotient": the full X~; "family": only the family and marked points.
  std::string space_scope;
  MetricSpace space;
  std::vector<std::string> family_labels;
  /// Points of `space` carrying the family, in family_index order.
  std::vector<std::size_t> family_points;
  /// Points x~_i of `space`.
  std::vector<std::size_t> points;
  /// Left translations g~_j on `space` (scope "quotient" only).
  std::vector<PermutationIsometry> generators;

  std::shared_ptr<const PermutationQuotient> quotient;
  std::optional<Certificate> certificate;
  std::vector<std::string> log;

  bool success() const { return certificate && certificate->pass; }
  Rational epsilon_achieved() const { return certificate ? certificate->deviation : Rational(0); }
  IndexedFamily family() const { return {family_labels, space, family_points}; }
};

/// Orbit metric, parameters, quotient, quotient metric, then certify.
/// Reports success only with a passing certificate; when no quotient passes,
/// the best candidate is returned with its honest deviation.
ApproximationResult approximate_isometries(const MetricSpace& X, const std::vector<PermutationIsometry>& gens,
                                           const std::vector<std::size_t>& points, const Rational& epsilon,
                                           const ApproxOptions& opts = {});

/// Exact deviation between the original family and the result's family.
Certificate certify(const IndexedFamily& original, const ApproximationResult& result, const Rational& epsilon);

}  // namespace urysohn
