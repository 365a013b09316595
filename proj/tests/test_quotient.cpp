#include <algorithm>
#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "urysohn/free_group.hpp"
#include "urysohn/quotient.hpp"

using namespace urysohn;
using urysohn::testing::Rng;

namespace {

Word w(const char* s) { return Word::parse(s); }

PermutationIsometry cycle(std::size_t k) {
  PermutationIsometry p;
  for (std::size_t i = 0; i < k; ++i) p.images.push_back((i + 1) % k);
  return p;
}

// Every letter sequence of length <= r, reduced, deduplicated, sorted.
std::vector<Word> brute_ball(std::size_t rank, std::size_t r) {
  std::set<Word> all{Word()};
  std::vector<std::vector<Letter>> frontier{{}};
  for (std::size_t len = 1; len <= r; ++len) {
    std::vector<std::vector<Letter>> next;
    for (auto& seq : frontier)
      for (std::size_t l = 0; l < 2 * rank; ++l) {
        auto s = seq;
        s.push_back(static_cast<Letter>(l));
        all.insert(Word::reduce(s));
        next.push_back(std::move(s));
      }
    frontier = std::move(next);
  }
  return {all.begin(), all.end()};
}

// Kernel oracle by composing permutations letter by letter for every word.
std::optional<Word> brute_first_killed(const PermutationQuotient& Q, std::size_t N) {
  for (const auto& word : ball(Q.rank(), N)) {
    if (word.is_identity()) continue;
    auto p = PermutationIsometry::identity(Q.degree());
    for (Letter l : word.letters()) {
      auto g = Q.generator(generator_of(l));
      p = p * (is_inverse(l) ? g.inverse() : g);
    }
    if (p.is_identity()) return word;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("free reduction and multiplication") {
  CHECK(Word::reduce({make_letter(0, false), make_letter(0, true)}).is_identity());
  CHECK(w("g1 g2") * w("g2^-1 g1") == w("g1 g1"));
  CHECK(w("g1g2^-1*g3").str() == "g1 g2^-1 g3");
  CHECK(w("e").is_identity());
  CHECK(w("g2 g2^-1 g1").str() == "g1");
  CHECK(w("g1 g2").inverse() == w("g2^-1 g1^-1"));
  CHECK(w("g1 g2 g1^-1").rank() == 2);
  CHECK_THROWS_AS(w("h1"), std::invalid_argument);
  CHECK_THROWS_AS(w("g0"), std::invalid_argument);
  CHECK_THROWS_AS(w("e g1"), std::invalid_argument);
}

TEST_CASE("balls are complete and shortlex ordered") {
  CHECK(ball(2, 2).size() == 17);
  CHECK(ball_size(2, 2) == 17);
  CHECK(ball_size(4, 4) == 3201);
  CHECK(ball(0, 3).size() == 1);
  for (std::size_t rank = 1; rank <= 3; ++rank)
    for (std::size_t r = 0; r <= 4; ++r) {
      auto b = ball(rank, r);
      CHECK(b.size() == ball_size(rank, r));
      CHECK(b == brute_ball(rank, r));
      CHECK(b.front().is_identity());
    }
}

TEST_CASE("word multiplication is associative with inverses") {
  Rng rng(3);
  auto words = ball(3, 3);
  for (int t = 0; t < 2000; ++t) {
    const auto& a = words[rng() % words.size()];
    const auto& b = words[rng() % words.size()];
    const auto& c = words[rng() % words.size()];
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * a.inverse()).is_identity());
    std::vector<Letter> cat = a.letters();
    cat.insert(cat.end(), b.letters().begin(), b.letters().end());
    CHECK(Word::reduce(cat) == a * b);
    CHECK(Word::parse(a.str()) == a);
  }
}

TEST_CASE("cyclic quotients survive exactly up to their order") {
  for (std::size_t k = 1; k <= 20; ++k) {
    PermutationQuotient Q(k, {cycle(k)});
    auto v = kernel_check(Q, 8);
    CHECK(v.passed == (k >= 9));
    if (!v.passed) CHECK(*v.first_killed == Word::reduce(std::vector<Letter>(k, make_letter(0, false))));
    REQUIRE(Q.materialize(100));
    CHECK(Q.order() == k);
    CHECK(kernel_free_radius(Q) == k - 1);
  }
  PermutationQuotient eight(8, {cycle(8)});
  CHECK(kernel_check(eight, 8).first_killed->str() == "g1 g1 g1 g1 g1 g1 g1 g1");

  PermutationQuotient trivial(1, {PermutationIsometry::identity(1)});
  auto t = kernel_check(trivial, 3);
  CHECK_FALSE(t.passed);
  CHECK(*t.first_killed == w("g1"));
  CHECK(kernel_check(trivial, 0).passed);
}

TEST_CASE("ball permutation quotients are kernel free") {
  auto Q = ball_perm_quotient(2, 2);
  CHECK(Q.degree() == 17);
  auto words = ball(2, 2);
  // The basepoint is the identity word; every nontrivial word moves it.
  for (std::size_t i = 1; i < words.size(); ++i) CHECK(Q.permutation_of(words[i])(0) == i);
  for (std::size_t rank = 1; rank <= 3; ++rank)
    for (std::size_t N = 0; N <= 4; ++N) {
      auto P = ball_perm_quotient(rank, N);
      CHECK(kernel_check_enumerate(P, N).passed);
      CHECK_FALSE(brute_first_killed(P, N));
    }
  auto one = ball_perm_quotient(1, 8);
  REQUIRE(one.materialize(1000));
  CHECK(one.order() == 17);
  CHECK(kernel_free_radius(one) == 16);
}

TEST_CASE("kernel routes agree") {
  Rng rng(11);
  for (int t = 0; t < 150; ++t) {
    std::size_t rank = 1 + t % 3;
    std::size_t degree = 2 + rng() % 5;
    auto Q = random_quotient(rank, degree, rng());
    REQUIRE(Q.materialize(10000));
    auto relator = shortest_relator(Q);
    REQUIRE(relator);
    CHECK(Q.image(*relator) == 0);
    std::size_t N = std::min<std::size_t>(relator->length(), 6);
    auto e = kernel_check_enumerate(Q, N);
    auto oracle = brute_first_killed(Q, N);
    CHECK(e.first_killed == oracle);
    if (relator->length() <= N) {
      CHECK(*e.first_killed == *relator);
    } else {
      CHECK(e.passed);
    }
  }
}

TEST_CASE("materialized quotient arithmetic") {
  PermutationIsometry swap{{1, 0, 2}};
  PermutationQuotient S3(3, {swap, cycle(3)});
  REQUIRE(S3.materialize(100));
  CHECK(S3.order() == 6);
  CHECK_FALSE(S3.materialize(5));
  for (PermutationQuotient::Index p = 0; p < 6; ++p) {
    CHECK(S3.multiply(p, S3.inverse(p)) == 0);
    for (PermutationQuotient::Index q = 0; q < 6; ++q)
      CHECK(S3.element_permutation(S3.multiply(p, q)) == S3.element_permutation(p) * S3.element_permutation(q));
  }
  auto word = w("g1 g2^-1 g2^-1 g1");
  CHECK(S3.element_permutation(S3.image(word)) == S3.permutation_of(word));

  PermutationQuotient big(6, {cycle(6), PermutationIsometry{{1, 0, 2, 3, 4, 5}}});
  CHECK_FALSE(big.materialize(100));
  CHECK_FALSE(big.materialized());
  CHECK(big.materialize(720));
  CHECK(big.order() == 720);
}

TEST_CASE("random search is independent of the job count") {
  RandomSearch opts{6, 40, 77};
  auto a = random_search(2, 3, opts, 100000, 1);
  auto b = random_search(2, 3, opts, 100000, 3);
  REQUIRE(a.quotient);
  REQUIRE(b.quotient);
  CHECK(a.accepted_attempt == b.accepted_attempt);
  CHECK(a.quotient->generator(0) == b.quotient->generator(0));
  CHECK(a.quotient->generator(1) == b.quotient->generator(1));
  CHECK(kernel_free_radius(*a.quotient) >= 3);
  auto none = random_search(2, 40, RandomSearch{3, 5, 1}, 1000);
  CHECK_FALSE(none.quotient);
  CHECK(none.attempts_tried == 5);
}
