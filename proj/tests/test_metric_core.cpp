#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "generators.hpp"
#include "urysohn/embeddability.hpp"
#include "urysohn/embedding.hpp"
#include "urysohn/indexed_family.hpp"
#include "urysohn/metric_space.hpp"

using namespace urysohn;
using urysohn::testing::Rng;
using urysohn::testing::random_metric;
using urysohn::testing::space_from;

namespace {

DistanceMatrix<Rational> mat(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  DistanceMatrix<Rational> d(rows.size(), rows.size());
  std::size_t i = 0;
  for (auto r : rows) {
    std::size_t j = 0;
    for (auto v : r) d(i, j++) = Rational(v);
    ++i;
  }
  return d;
}

MetricSpace pair(Rational d) { return space_from({{d}}, 2); }

// Brute-force path metric: minimum over all simple paths, by enumerating
// orderings of intermediate vertices. Independent of Floyd-Warshall.
Rational brute_path(const std::vector<std::vector<std::optional<Rational>>>& w, std::size_t s, std::size_t t) {
  const std::size_t n = w.size();
  std::vector<std::size_t> others;
  for (std::size_t v = 0; v < n; ++v)
    if (v != s && v != t) others.push_back(v);
  std::optional<Rational> best;
  for (std::size_t mask = 0; mask < (1u << others.size()); ++mask) {
    std::vector<std::size_t> mid;
    for (std::size_t b = 0; b < others.size(); ++b)
      if (mask & (1u << b)) mid.push_back(others[b]);
    std::sort(mid.begin(), mid.end());
    do {
      std::size_t cur = s;
      Rational cost(0);
      bool ok = true;
      for (auto v : mid) {
        if (!w[cur][v]) { ok = false; break; }
        cost += *w[cur][v];
        cur = v;
      }
      if (!ok || !w[cur][t]) continue;
      cost += *w[cur][t];
      if (!best || cost < *best) best = cost;
    } while (std::next_permutation(mid.begin(), mid.end()));
  }
  return s == t ? Rational(0) : *best;
}

}  // namespace

TEST_CASE("validate_metric examples") {
  auto one = validate_metric(mat({{0}}));
  CHECK(one.ok());
  CHECK(one.space->size() == 1);

  auto bad = validate_metric(mat({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}));
  REQUIRE_FALSE(bad.ok());
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].kind == Violation::Kind::triangle);
  CHECK(bad.violations[0].i == 0);
  CHECK(bad.violations[0].j == 1);
  CHECK(bad.violations[0].k == 2);

  auto p3 = validate_metric(mat({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
  CHECK(p3.ok());
}

TEST_CASE("validate_metric reports every violation with indices") {
  DistanceMatrix<Rational> d = mat({{1, 2, -1}, {3, 0, 0}, {-1, 0, 0}});
  auto v = validate_metric(d);
  REQUIRE_FALSE(v.ok());
  auto count = [&](Violation::Kind k) {
    return std::count_if(v.violations.begin(), v.violations.end(), [&](auto& x) { return x.kind == k; });
  };
  CHECK(count(Violation::Kind::nonzero_diagonal) == 1);
  CHECK(count(Violation::Kind::negative) == 2);
  CHECK(count(Violation::Kind::asymmetric) == 1);
  CHECK(count(Violation::Kind::zero_distance) == 1);

  DistanceMatrix<Rational> rect(2, 3);
  rect.setZero();
  auto r = validate_metric(rect);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].kind == Violation::Kind::not_square);
  CHECK_THROWS_AS(MetricSpace(mat({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}})), MetricError);
}

TEST_CASE("pseudometric is distinct from metric and quotients explicitly") {
  PseudoMetricSpace p(mat({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}}));
  CHECK_FALSE(p.is_metric());
  auto q = p.metric_quotient();
  CHECK(q.space.size() == 2);
  CHECK(q.classes == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
  CHECK(q.space.label(0) == "0=1");
  CHECK_FALSE(validate_metric(p.distances()).ok());
}

TEST_CASE("epsilon_isometry_check examples") {
  auto a = IndexedFamily::of(pair(Rational(1)));
  auto b = IndexedFamily::of(pair(Rational(6, 5)));
  auto self = epsilon_isometry_check(a, a, Rational(0));
  CHECK(self.within);
  CHECK(self.max_deviation == Rational(0));
  auto r = epsilon_isometry_check(a, b, Rational(1, 5));
  CHECK(r.within);
  CHECK(r.max_deviation == Rational(1, 5));
  CHECK_FALSE(epsilon_isometry_check(a, b, Rational(1, 10)).within);

  IndexedFamily c({"x", "y"}, pair(Rational(1)), {0, 1});
  CHECK_THROWS(epsilon_isometry_check(a, c, Rational(1)));
}

TEST_CASE("epsilon_isometry_check is symmetric and monotone in eps") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 2 + rng() % 5;
    auto x = random_metric(rng, n);
    auto y = random_metric(rng, n);
    IndexedFamily a = IndexedFamily::of(x), b = IndexedFamily::of(y);
    b.index = a.index;
    auto ab = epsilon_isometry_check(a, b, Rational(1));
    auto ba = epsilon_isometry_check(b, a, Rational(1));
    CHECK(ab.max_deviation == ba.max_deviation);
    CHECK(ab.within == ba.within);
    Rational e1(rng() % 10, 4), e2 = e1 + Rational(rng() % 10, 4);
    if (epsilon_isometry_check(a, b, e1).within) CHECK(epsilon_isometry_check(a, b, e2).within);
  }
}

TEST_CASE("glue_indexed examples") {
  SUBCASE("two single points") {
    auto a = IndexedFamily::of(MetricSpace(mat({{0}})));
    auto b = a;
    auto g = glue_indexed(a, b, Rational(1, 2));
    REQUIRE(g.space.size() == 2);
    CHECK(g.space(0, 1) == Rational(1, 2));
  }
  SUBCASE("identical pairs at eps 0 collapse") {
    auto a = IndexedFamily::of(pair(Rational(1)));
    auto g = glue_indexed(a, a, Rational(0));
    REQUIRE(g.space.size() == 2);
    CHECK(g.space(0, 1) == Rational(1));
    CHECK(g.collapse_classes == std::vector<std::vector<std::size_t>>{{0, 2}, {1, 3}});
    CHECK(g.a_copy(0) == g.b_copy(0));
  }
  SUBCASE("pair 1 against pair 6/5 at eps 1/5") {
    auto a = IndexedFamily::of(pair(Rational(1)));
    auto b = IndexedFamily::of(pair(Rational(6, 5)));
    auto g = glue_indexed(a, b, Rational(1, 5));
    REQUIRE(g.space.size() == 4);
    // Oracle: all simple paths on the 4-vertex bridge graph.
    std::vector<std::vector<std::optional<Rational>>> w(4, std::vector<std::optional<Rational>>(4));
    w[0][1] = w[1][0] = Rational(1);
    w[2][3] = w[3][2] = Rational(6, 5);
    w[0][2] = w[2][0] = w[1][3] = w[3][1] = Rational(1, 5);
    for (std::size_t s = 0; s < 4; ++s)
      for (std::size_t t = 0; t < 4; ++t) CHECK(g.space(s, t) == brute_path(w, s, t));
    CHECK(g.space(0, 3) == Rational(6, 5));
    CHECK(g.space(1, 2) == Rational(6, 5));
    CHECK(g.space(g.a_copy(0), g.a_copy(1)) == Rational(1));
    CHECK(g.space(g.b_copy(0), g.b_copy(1)) == Rational(6, 5));
    CHECK(g.space(g.a_copy(0), g.b_copy(0)) == Rational(1, 5));
  }
  SUBCASE("refuses non eps-isometric input") {
    auto a = IndexedFamily::of(pair(Rational(1)));
    auto b = IndexedFamily::of(pair(Rational(2)));
    CHECK_THROWS_AS(glue_indexed(a, b, Rational(1, 2)), std::invalid_argument);
  }
}

TEST_CASE("glue_indexed restrictions are exact on random families") {
  Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + rng() % 4;
    auto x = random_metric(rng, n, 6, 2);
    // Perturb each distance by at most 1/4 and re-close to a metric.
    std::vector<std::vector<std::optional<Rational>>> w(n, std::vector<std::optional<Rational>>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) w[i][j] = w[j][i] = x(i, j) + Rational(rng() % 2, 4);
    MetricSpace y(shortest_path_closure(w));
    auto a = IndexedFamily::of(x), b = IndexedFamily::of(y);
    b.index = a.index;
    Rational eps = epsilon_isometry_check(a, b, Rational(0)).max_deviation + Rational(rng() % 3, 8);
    auto g = glue_indexed(a, b, eps);
    CHECK(validate_metric(g.space.distances()).ok());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(g.space(g.a_copy(i), g.b_copy(i)) <= eps);
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(g.space(g.a_copy(i), g.a_copy(j)) == x(i, j));
        CHECK(g.space(g.b_copy(i), g.b_copy(j)) == y(i, j));
      }
    }
  }
}

TEST_CASE("enumerate_embeddings examples") {
  auto p3 = path_space(3);
  auto point = MetricSpace(mat({{0}}));
  CHECK(enumerate_embeddings(point, p3).size() == 3);
  auto e = enumerate_embeddings(pair(Rational(1)), p3);
  std::vector<Embedding> expected{{{0, 1}}, {{1, 0}}, {{1, 2}}, {{2, 1}}};
  CHECK(e == expected);
  CHECK(enumerate_embeddings(pair(Rational(5)), p3).empty());
}

TEST_CASE("enumerate_embeddings matches brute force over injective maps") {
  Rng rng(5);
  for (int t = 0; t < 60; ++t) {
    std::size_t nx = 2 + rng() % 4, nf = 1 + rng() % nx;
    auto X = testing::random_grid_metric(rng, nx, {Rational(1), Rational(2)});
    auto F = X.subspace(testing::random_subset(rng, nx, nf));
    std::vector<Embedding> brute;
    std::vector<std::size_t> pts(nx);
    std::iota(pts.begin(), pts.end(), std::size_t(0));
    // All ordered nf-tuples of distinct points, in lexicographic order.
    std::vector<std::size_t> tuple(nf, 0);
    while (true) {
      Embedding cand{tuple};
      if (is_embedding(F, X, cand)) brute.push_back(cand);
      std::size_t pos = nf;
      while (pos > 0 && ++tuple[pos - 1] == nx) tuple[--pos] = 0;
      if (pos == 0) break;
    }
    CHECK(enumerate_embeddings(F, X) == brute);
  }
}

TEST_CASE("isometry_group examples") {
  auto rigid = space_from({{Rational(1), Rational(5, 2)}, {Rational(2)}}, 3);
  CHECK(isometry_group(rigid).size() == 1);
  CHECK(isometry_group(discrete_space(3)).size() == 6);
  auto p3 = isometry_group(path_space(3));
  REQUIRE(p3.size() == 2);
  CHECK(p3[0].is_identity());
  CHECK(p3[1].images == std::vector<std::size_t>{2, 1, 0});
}

TEST_CASE("isometry_group is a group and matches self-embeddings") {
  Rng rng(9);
  for (int t = 0; t < 40; ++t) {
    auto X = testing::random_grid_metric(rng, 2 + rng() % 4, {Rational(1), Rational(2)});
    auto group = isometry_group(X);
    CHECK(group.size() == enumerate_embeddings(X, X).size());
    CHECK(group.front().is_identity());
    for (auto& g : group) {
      CHECK(is_isometry(X, g));
      CHECK(std::find(group.begin(), group.end(), g.inverse()) != group.end());
      for (auto& h : group) CHECK(std::find(group.begin(), group.end(), g * h) != group.end());
    }
    CHECK(permutation_closure(group, X.size()).size() == group.size());
  }
}

TEST_CASE("Kuratowski sup identity on random spaces") {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    auto X = random_metric(rng, 1 + rng() % 8);
    for (std::size_t x = 0; x < X.size(); ++x)
      for (std::size_t y = 0; y < X.size(); ++y) CHECK(kuratowski_sup(X, x, y) == X(x, y));
  }
}

TEST_CASE("embeddability_test pinned examples") {
  SUBCASE("antipodal pair") {
    auto r = embeddability_test(mat({{0, 4}, {4, 0}}), EmbeddingTarget::sphere);
    CHECK(r.embeddable);
    CHECK(r.gram == mat({{1, -1}, {-1, 1}}));
    CHECK(r.certificate.rank() == 1);
  }
  SUBCASE("orthonormal triple") {
    auto r = embeddability_test(mat({{0, 2, 2}, {2, 0, 2}, {2, 2, 0}}), EmbeddingTarget::sphere);
    CHECK(r.embeddable);
    CHECK(r.gram == DistanceMatrix<Rational>::Identity(3, 3));
    CHECK(r.certificate.rank() == 3);
  }
  SUBCASE("pairwise squared distance 4 on four points") {
    auto r = embeddability_test(mat({{0, 4, 4, 4}, {4, 0, 4, 4}, {4, 4, 0, 4}, {4, 4, 4, 0}}),
                                EmbeddingTarget::sphere);
    CHECK_FALSE(r.embeddable);
    REQUIRE(r.certificate.witness);
    const auto& x = *r.certificate.witness;
    CHECK(r.certificate.witness_value < Rational(0));
    CHECK((x.transpose() * r.gram * x)(0, 0) == r.certificate.witness_value);
    // The all-ones vector attains the eigenvalue -2: 1^T G 1 = 4 * (-2).
    Vector<Rational> ones = Vector<Rational>::Constant(4, Rational(1));
    CHECK((ones.transpose() * r.gram * ones)(0, 0) == Rational(-8));
  }
  SUBCASE("euclidean mode: regular simplex embeds, violated triangle does not") {
    CHECK(embeddability_test(mat({{0, 4, 4, 4}, {4, 0, 4, 4}, {4, 4, 0, 4}, {4, 4, 4, 0}}),
                             EmbeddingTarget::euclidean)
              .embeddable);
    // Distances 1, 1, 3 (squares 1, 1, 9) break the triangle inequality.
    CHECK_FALSE(embeddability_test(mat({{0, 1, 9}, {1, 0, 1}, {9, 1, 0}}), EmbeddingTarget::euclidean).embeddable);
    // Collinear 0, 1, 2: rank 1.
    auto line = embeddability_test(mat({{0, 1, 4}, {1, 0, 1}, {4, 1, 0}}), EmbeddingTarget::euclidean);
    CHECK(line.embeddable);
    CHECK(line.certificate.rank() == 1);
  }
  SUBCASE("malformed input") {
    CHECK_THROWS(embeddability_test(mat({{0, 1}, {2, 0}}), EmbeddingTarget::sphere));
    CHECK_THROWS(embeddability_test(mat({{1, 1}, {1, 0}}), EmbeddingTarget::sphere));
  }
}

TEST_CASE("embeddability_test agrees with a floating eigenvalue oracle on 5 points") {
  Rng rng(29);
  int agree = 0, positives = 0;
  for (int t = 0; t < 300; ++t) {
    DistanceMatrix<Rational> s = DistanceMatrix<Rational>::Zero(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) s(i, j) = s(j, i) = Rational(std::int64_t(rng() % 9), 2);
    for (auto mode : {EmbeddingTarget::sphere, EmbeddingTarget::euclidean}) {
      auto r = embeddability_test(s, mode);
      Eigen::MatrixXd g(5, 5);
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) g(i, j) = r.gram(i, j).to_double();
      double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g).eigenvalues().minCoeff();
      bool oracle = lmin >= -1e-9;
      CHECK(oracle == r.embeddable);
      agree += oracle == r.embeddable;
      positives += r.embeddable;
      if (!r.embeddable) CHECK(r.certificate.witness_value < Rational(0));
    }
  }
  CHECK(agree == 600);
  CHECK(positives > 0);
}
