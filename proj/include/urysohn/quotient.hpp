#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "urysohn/embedding.hpp"
#include "urysohn/free_group.hpp"

namespace urysohn {

class QuotientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite quotient of a free group given by a permutation representation
/// g_k -> pi(g_k) of {0, ..., degree-1}. Words act as pi(a1 ... ak) =
/// pi(a1) o ... o pi(ak).
///
/// The element set is materialized on demand by breadth-first closure; until
/// then only word images are available.
class PermutationQuotient {
 public:
  using Index = std::uint32_t;

  PermutationQuotient(std::size_t degree, std::vector<PermutationIsometry> generators);

  std::size_t degree() const { return degree_; }
  std::size_t rank() const { return generators_.size(); }
  const PermutationIsometry& generator(std::size_t k) const { return generators_.at(k); }
  /// pi(letter).
  const PermutationIsometry& letter_permutation(Letter l) const { return letters_.at(l); }
  PermutationIsometry permutation_of(const Word& w) const;

  /// Builds the element set; false (and nothing stored) if it exceeds `cap`.
  bool materialize(std::size_t cap);
  bool materialized() const { return materialized_; }
  std::size_t order() const { return order_; }
  /// Element 0 is the identity; the rest in breadth-first discovery order.
  std::span<const Index> element(Index q) const { return {elements_.data() + std::size_t(q) * degree_, degree_}; }
  PermutationIsometry element_permutation(Index q) const;
  std::optional<Index> index_of(std::span<const Index> perm) const;
  /// q * pi(letter).
  Index rmul(Index q, Letter l) const { return rmul_[std::size_t(q) * 2 * rank() + l]; }
  Index image(const Word& w) const;
  Index multiply(Index p, Index q) const;
  Index inverse(Index q) const;

 private:
  std::size_t slot(std::span<const Index> perm) const;
  std::uint64_t hash(std::span<const Index> perm) const;

  std::size_t degree_;
  std::vector<PermutationIsometry> generators_;
  std::vector<PermutationIsometry> letters_;
  std::size_t order_ = 0;
  bool materialized_ = false;
  std::vector<Index> elements_;
  std::vector<Index> rmul_;
  std::vector<Index> table_;  // open addressing over element indices, npos = empty
};

struct KernelVerdict {
  bool passed = true;
  /// Shortlex-first nontrivial reduced word mapped to the identity.
  std::optional<Word> first_killed;
  std::size_t words_checked = 0;
  enum class Route { enumeration, relator_search } route = Route::enumeration;
};

/// Default bound on |ball(N)| for the enumeration route.
inline constexpr std::size_t kernel_enumeration_limit = 20'000'000;

/// Checks that no reduced word of length 1..N maps to the identity. Enumerates
/// ball(N) when it has at most `enumeration_limit` words; otherwise uses the
/// shortest-relator search on the materialized quotient (throws if the
/// quotient is not materialized).
KernelVerdict kernel_check(const PermutationQuotient& Q, std::size_t N,
                           std::size_t enumeration_limit = kernel_enumeration_limit);

/// Kernel check by enumeration only.
KernelVerdict kernel_check_enumerate(const PermutationQuotient& Q, std::size_t N);

/// Shortlex-first nontrivial reduced word in the kernel, by breadth-first
/// search over (element, last letter) states. Requires materialization;
/// nullopt only for rank 0.
std::optional<Word> shortest_relator(const PermutationQuotient& Q);

/// Largest N for which the kernel meets ball(N) trivially.
std::size_t kernel_free_radius(const PermutationQuotient& Q);

/// Each generator acts on ball(N) by left multiplication; the partial
/// injection is completed by pairing the unmatched words in shortlex order.
/// Kernel-free up to N (basepoint orbit). Degree |ball(N)|.
PermutationQuotient ball_perm_quotient(std::size_t rank, std::size_t N);

struct RandomSearch {
  std::size_t degree = 7;
  std::size_t attempts = 64;
  std::uint64_t seed = 0;
};

/// Seed of the i-th attempt (splitmix64 of seed and i).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t i);

/// Random generator permutations of the attempt's own stream.
PermutationQuotient random_quotient(std::size_t rank, std::size_t degree, std::uint64_t attempt_seed);

struct SearchOutcome {
  std::optional<PermutationQuotient> quotient;
  std::size_t accepted_attempt = 0;
  std::size_t attempts_tried = 0;
};

/// Attempts are materialized (cap) and passed to `accept` in canonical
/// order; the first accepted attempt wins, whatever `jobs` is.
SearchOutcome random_search(std::size_t rank, const RandomSearch& opts, std::size_t cap,
                            const std::function<bool(const PermutationQuotient&)>& accept, unsigned jobs = 1);

/// random_search accepting quotients that pass kernel_check(N).
SearchOutcome random_search(std::size_t rank, std::size_t N, const RandomSearch& opts, std::size_t cap,
                            unsigned jobs = 1);

}  // namespace urysohn
