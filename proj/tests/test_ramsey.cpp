#include <algorithm>
#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "urysohn/ramsey.hpp"

using namespace urysohn;
using urysohn::testing::Rng;

namespace {

MetricSpace discrete(std::size_t n) {
  DistanceMatrix<Rational> d = DistanceMatrix<Rational>::Constant(n, n, Rational(1));
  for (std::size_t i = 0; i < n; ++i) d(i, i) = Rational(0);
  return MetricSpace(d);
}

MetricSpace path3() { return testing::space_from({{Rational(1), Rational(2)}, {Rational(1)}}, 3); }

RamseyOptions subspaces() {
  RamseyOptions o;
  o.mode = RamseyMode::subspaces;
  return o;
}

// Colour-1 edges of a 5-point coloring form a 5-cycle (or the colour-0 ones do).
bool is_pentagon(const RamseyDomain& dom, const Coloring& c) {
  for (unsigned colour : {0u, 1u}) {
    std::vector<std::vector<std::size_t>> adj(5);
    std::size_t edges = 0;
    for (std::size_t e = 0; e < dom.size(); ++e) {
      if (c[e] != colour) continue;
      auto img = dom.image(e);
      adj[img[0]].push_back(img[1]);
      adj[img[1]].push_back(img[0]);
      ++edges;
    }
    if (edges != 5) continue;
    bool two_regular = std::all_of(adj.begin(), adj.end(), [](auto& a) { return a.size() == 2; });
    if (!two_regular) continue;
    // Connected: walk the cycle from 0.
    std::size_t prev = 0, at = adj[0][0], steps = 1;
    while (at != 0 && steps < 10) {
      std::size_t next = adj[at][0] == prev ? adj[at][1] : adj[at][0];
      prev = at;
      at = next;
      ++steps;
    }
    if (steps == 5) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("embedding space and balls") {
  auto X = path3();
  auto point = MetricSpace(DistanceMatrix<Rational>::Zero(1, 1));
  EmbeddingSpace es(point, X);
  REQUIRE(es.size() == 3);
  CHECK(embedding_ball(es, Embedding{{1}}, Rational(1)).size() == 3);
  CHECK(embedding_ball(es, Embedding{{0}}, Rational(1)).size() == 2);
  CHECK(embedding_ball(es, Embedding{{0}}, Rational(0)) == std::vector<Embedding>{Embedding{{0}}});
  CHECK(embedding_ball(es, Embedding{{0}}, X.diameter()).size() == 3);
  CHECK_THROWS_AS(embedding_ball(es, Embedding{{5}}, Rational(1)), std::invalid_argument);

  EmbeddingSpace pairs(testing::space_from({{Rational(1)}}, 2), X);
  CHECK(pairs.size() == 4);  // (0,1) (1,0) (1,2) (2,1)
  CHECK(pairs.distance(0, 1) == Rational(1));
  CHECK(pairs.distance(0, 2) == Rational(1));
  CHECK(pairs.distance(0, 3) == Rational(2));
}

TEST_CASE("sup metric on embeddings satisfies the metric axioms") {
  Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    auto X = testing::random_grid_metric(rng, 3 + rng() % 4, {Rational(1), Rational(3, 2), Rational(2)});
    auto F = X.subspace(testing::random_subset(rng, X.size(), 1 + rng() % 2));
    EmbeddingSpace es(F, X);
    CHECK(validate_metric(es.space().distances()).ok());
  }
}

TEST_CASE("one colour: any G-embedding is good") {
  auto X = path3();
  auto pair = testing::space_from({{Rational(1)}}, 2);
  auto v = check_R(pair, pair, X, 1, Rational(0));
  CHECK(v.status == RamseyStatus::holds);
  REQUIRE(v.good_embedding);
  CHECK(*v.good_embedding == enumerate_embeddings(pair, X).front());
}

TEST_CASE("R(3,3): K6 holds, K5 fails with a pentagon") {
  auto edge = discrete(2), triangle = discrete(3);
  auto k6 = check_R(edge, triangle, discrete(6), 2, Rational(1, 2), subspaces());
  CHECK(k6.status == RamseyStatus::holds);
  CHECK(k6.domain_size == 15);
  CHECK(k6.colorings_examined == (1u << 15));

  auto k5 = check_R(edge, triangle, discrete(5), 2, Rational(1, 2), subspaces());
  REQUIRE(k5.status == RamseyStatus::fails);
  REQUIRE(k5.bad_coloring);
  CHECK(k5.domain_size == 10);
  RamseyDomain dom(edge, discrete(5), RamseyMode::subspaces);
  CHECK(is_pentagon(dom, *k5.bad_coloring));
  CHECK_FALSE(verify_some_good(edge, triangle, discrete(5), Rational(1, 2), RamseyMode::subspaces, *k5.bad_coloring));
  CHECK(verify_domain_size(edge, discrete(5), RamseyMode::subspaces) == 10);
}

TEST_CASE("flip coloring refutes the embedding form") {
  auto pair = discrete(2);
  for (std::size_t n = 2; n <= 5; ++n) {
    auto X = discrete(n);
    auto w = flip_coloring_witness(X, pair, Rational(1, 2));
    CHECK(w.refutes);
    CHECK(w.eps0 == Rational(1));
    CHECK(w.coloring.size() == n * (n - 1));
    // i and its flip get opposite colours.
    EmbeddingSpace es(pair, X);
    for (std::size_t k = 0; k < es.size(); ++k) {
      auto flipped = *es.index_of(Embedding{{es[k](1), es[k](0)}});
      CHECK(w.coloring[k] != w.coloring[flipped]);
    }
    CHECK_FALSE(verify_some_good(pair, pair, X, Rational(1, 2), RamseyMode::embeddings, w.coloring));
    RamseyOptions o;
    if (n * (n - 1) <= 25) {
      auto v = check_R(pair, pair, X, 2, Rational(1, 2), o);
      CHECK(v.status == RamseyStatus::fails);
    }
  }
  auto four = flip_coloring_witness(discrete(4), pair, Rational(1, 2));
  CHECK(four.coloring.size() == 12);
  CHECK(std::count(four.coloring.begin(), four.coloring.end(), 0u) == 6);

  auto wide = flip_coloring_witness(discrete(3), pair, Rational(1));
  CHECK_FALSE(wide.refutes);
  CHECK(verify_some_good(pair, pair, discrete(3), Rational(1), RamseyMode::embeddings, wide.coloring));

  CHECK_THROWS_AS(flip_coloring_witness(discrete(3), testing::space_from({{Rational(2)}}, 2), Rational(1, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(flip_coloring_witness(discrete(3), discrete(3), Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("vacuous conventions and refusal") {
  auto pair = testing::space_from({{Rational(5)}}, 2);
  auto v = check_R(pair, pair, discrete(3), 2, Rational(1, 2));
  CHECK(v.status == RamseyStatus::holds);
  CHECK_FALSE(v.note.empty());
  auto w = check_R(discrete(2), discrete(4), discrete(3), 2, Rational(1, 2));
  CHECK(w.status == RamseyStatus::fails);
  CHECK_FALSE(w.note.empty());
  // 2^30 colorings of the ordered pairs of K6.
  CHECK_THROWS_AS(check_R(discrete(2), discrete(3), discrete(6), 2, Rational(1, 2)), RamseyDomainTooLarge);
}

TEST_CASE("adversarial search finds checkable witnesses") {
  RamseyOptions o = subspaces();
  o.search.kind = RamseySearch::Kind::adversarial;
  o.search.seed = 4;
  auto v = check_R(discrete(2), discrete(3), discrete(5), 2, Rational(1, 2), o);
  REQUIRE(v.status == RamseyStatus::fails);
  CHECK_FALSE(verify_some_good(discrete(2), discrete(3), discrete(5), Rational(1, 2), RamseyMode::subspaces,
                               *v.bad_coloring));
  auto k6 = check_R(discrete(2), discrete(3), discrete(6), 2, Rational(1, 2), o);
  CHECK(k6.status == RamseyStatus::inconclusive);
  // Beyond the exhaustive bound: the embeddings form on K6 still falls.
  RamseyOptions e;
  e.search.kind = RamseySearch::Kind::adversarial;
  e.search.seed = 9;
  auto flip = check_R(discrete(2), discrete(2), discrete(6), 2, Rational(1, 2), e);
  REQUIRE(flip.status == RamseyStatus::fails);
  CHECK_FALSE(verify_some_good(discrete(2), discrete(2), discrete(6), Rational(1, 2), RamseyMode::embeddings,
                               *flip.bad_coloring));
}

TEST_CASE("check_R against the brute-force re-check") {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    auto X = testing::random_grid_metric(rng, 3 + rng() % 2, {Rational(1), Rational(3, 2), Rational(2)});
    auto G = X.subspace(testing::random_subset(rng, X.size(), 2 + rng() % 2));
    auto F = G.subspace(testing::random_subset(rng, G.size(), 1 + rng() % 2));
    Rational eps = std::vector<Rational>{Rational(0), Rational(1, 2), Rational(1)}[rng() % 3];
    for (auto mode : {RamseyMode::embeddings, RamseyMode::subspaces}) {
      RamseyOptions o;
      o.mode = mode;
      RamseyVerdict v;
      try {
        v = check_R(F, G, X, 2, eps, o);
      } catch (const RamseyDomainTooLarge&) {
        continue;
      }
      CHECK(v.domain_size == verify_domain_size(F, X, mode));
      if (v.status == RamseyStatus::fails) {
        CHECK_FALSE(verify_some_good(F, G, X, eps, mode, *v.bad_coloring));
      } else {
        REQUIRE(v.good_embedding);
        CHECK(verify_good(F, G, X, eps, mode, Coloring(v.domain_size, 0), *v.good_embedding));
        // Random colorings each have a good copy, found and re-checked.
        for (int k = 0; k < 5; ++k) {
          Coloring c(v.domain_size);
          for (auto& x : c) x = rng() % 2;
          auto j = good_embedding(F, G, X, eps, mode, c);
          REQUIRE(j);
          CHECK(verify_good(F, G, X, eps, mode, c, *j));
        }
      }
    }
  }
}

TEST_CASE("monotonicity in eps and m, and mode agreement on rigid F") {
  Rng rng(5150);
  for (int trial = 0; trial < 30; ++trial) {
    auto X = testing::random_grid_metric(rng, 4, {Rational(1), Rational(3, 2), Rational(2)});
    auto G = X.subspace(testing::random_subset(rng, 4, 3));
    auto F = G.subspace(testing::random_subset(rng, 3, 2));
    auto status = [&](Rational eps, std::size_t m, RamseyMode mode) {
      RamseyOptions o;
      o.mode = mode;
      return check_R(F, G, X, m, eps, o).status;
    };
    const std::vector<Rational> eps{Rational(0), Rational(1, 2), Rational(1), Rational(2)};
    for (auto mode : {RamseyMode::embeddings, RamseyMode::subspaces}) {
      for (std::size_t k = 0; k + 1 < eps.size(); ++k)
        if (status(eps[k], 2, mode) == RamseyStatus::holds) CHECK(status(eps[k + 1], 2, mode) == RamseyStatus::holds);
      if (status(Rational(1, 2), 2, mode) == RamseyStatus::holds)
        CHECK(status(Rational(1, 2), 1, mode) == RamseyStatus::holds);
    }
  }
  // A rigid F (distances 1, 3/2, 2): both modes see the same domain.
  auto F = testing::space_from({{Rational(1), Rational(2)}, {Rational(3, 2)}}, 3);
  REQUIRE(isometry_group(F).size() == 1);
  for (int trial = 0; trial < 10; ++trial) {
    auto extra = testing::random_grid_metric(rng, 5, {Rational(1), Rational(3, 2), Rational(2)});
    RamseyOptions sub = subspaces();
    RamseyOptions emb;
    auto a = check_R(F, F, extra, 2, Rational(1, 2), sub);
    auto b = check_R(F, F, extra, 2, Rational(1, 2), emb);
    if (a.status == RamseyStatus::fails) CHECK(b.status == RamseyStatus::fails);
    CHECK(a.domain_size == b.domain_size);
  }
}

TEST_CASE("finite RDM cover check") {
  auto X = discrete(2);
  PermutationIsometry swap{{1, 0}};
  std::vector<std::vector<std::size_t>> singletons{{0}, {1}};
  auto none = rdm_finite_check(X, {swap}, singletons, Rational(1, 2), {0, 1});
  CHECK_FALSE(none.holds);
  CHECK(none.group_order == 2);
  auto single = rdm_finite_check(X, {swap}, singletons, Rational(1, 2), {1});
  CHECK(single.holds);
  REQUIRE(single.witness);
  CHECK(single.witness->is_identity());
  CHECK(single.cover_index == 1);
  auto whole = rdm_finite_check(X, {}, {{0, 1}}, Rational(0), {0, 1});
  CHECK(whole.holds);
  CHECK(rdm_finite_check(X, {}, singletons, Rational(1), {0, 1}).holds);
  CHECK_THROWS_AS(rdm_finite_check(X, {}, {{0}}, Rational(1), {0}), std::invalid_argument);

  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto Y = testing::random_grid_metric(rng, 4, {Rational(1), Rational(2)});
    std::vector<std::vector<std::size_t>> cover{{0, 1}, {2, 3}};
    auto iso = isometry_group(Y);
    for (std::size_t x = 0; x < 4; ++x) CHECK(rdm_finite_check(Y, iso, cover, Rational(0), {x}).holds);
    CHECK(rdm_finite_check(Y, iso, {{0, 1, 2, 3}}, Rational(0), {0, 1, 2, 3}).holds);
  }
}
