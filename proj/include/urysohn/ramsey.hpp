#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "urysohn/embedding.hpp"
#include "urysohn/metric_space.hpp"

namespace urysohn {

/// All isometric embeddings F -> X with the sup metric
/// d(i, j) = max over a in F of d_X(i(a), j(a)).
class EmbeddingSpace {
 public:
  EmbeddingSpace(MetricSpace F, MetricSpace X);

  const MetricSpace& F() const { return F_; }
  const MetricSpace& X() const { return X_; }
  /// enumerate_embeddings order.
  const std::vector<Embedding>& embeddings() const { return embeddings_; }
  std::size_t size() const { return embeddings_.size(); }
  const Embedding& operator[](std::size_t k) const { return embeddings_[k]; }

  Rational distance(std::size_t i, std::size_t j) const;
  std::optional<std::size_t> index_of(const Embedding& e) const;
  /// The embeddings as a metric space, labelled "e<k>".
  MetricSpace space() const;

 private:
  MetricSpace F_, X_;
  std::vector<Embedding> embeddings_;
};

/// Embeddings within sup distance eps of `center` (closed), center included.
/// Throws if `center` is not an embedding of the space.
std::vector<Embedding> embedding_ball(const EmbeddingSpace& es, const Embedding& center, const Rational& eps);

enum class RamseyMode { embeddings, subspaces };

/// What gets colored. In embeddings mode every embedding F -> X is one
/// element. In subspaces mode an element is a copy of F inside X, i.e. an
/// image set; two embeddings with the same image differ by an isometry of F.
/// Elements keep the order of their first embedding in enumeration order, and
/// copies are compared by the least sup distance over all reindexings.
class RamseyDomain {
 public:
  RamseyDomain(const MetricSpace& F, const MetricSpace& X, RamseyMode mode);

  RamseyMode mode() const { return mode_; }
  const EmbeddingSpace& embeddings() const { return es_; }
  std::size_t size() const { return representative_.size(); }
  /// Element carried by embedding k of embeddings().
  std::size_t element_of(std::size_t k) const { return element_[k]; }
  /// First embedding (in enumeration order) of element e.
  const Embedding& representative(std::size_t e) const { return es_[representative_[e]]; }
  /// Sorted image of element e.
  std::vector<std::size_t> image(std::size_t e) const;
  Rational distance(std::size_t a, std::size_t b) const;
  /// Element of an arbitrary embedding F -> X.
  std::optional<std::size_t> element_of(const Embedding& e) const;

 private:
  RamseyMode mode_;
  EmbeddingSpace es_;
  std::vector<std::size_t> element_;
  std::vector<std::size_t> representative_;
  std::vector<Rational> dist_;
};

/// Colour of every domain element, values in 0..m-1.
using Coloring = std::vector<unsigned>;

struct RamseySearch {
  enum class Kind { exhaustive, adversarial };
  Kind kind = Kind::exhaustive;
  std::uint64_t seed = 0;
  /// Hill-climbing moves per restart.
  std::size_t iterations = 2000;
  std::size_t restarts = 8;
};

struct RamseyOptions {
  RamseyMode mode = RamseyMode::embeddings;
  RamseySearch search{};
  /// Largest m^|domain| enumerated in exhaustive mode.
  std::uint64_t exhaustive_bound = std::uint64_t(1) << 25;
  unsigned jobs = 1;
};

class RamseyDomainTooLarge : public std::runtime_error {
 public:
  RamseyDomainTooLarge(std::size_t m, std::size_t domain)
      : std::runtime_error("exhaustive search refused: " + std::to_string(m) + "^" + std::to_string(domain) +
                           " colorings exceed the bound"),
        colors(m),
        domain_size(domain) {}
  std::size_t colors, domain_size;
};

enum class RamseyStatus {
  holds,        ///< every coloring admits a good copy of G
  fails,        ///< `bad_coloring` admits none
  inconclusive  ///< adversarial search found no bad coloring
};

struct RamseyVerdict {
  RamseyStatus status = RamseyStatus::inconclusive;
  RamseyMode mode = RamseyMode::embeddings;
  std::size_t m = 0;
  Rational epsilon;
  /// A good G -> X for the constant coloring (when the property holds).
  std::optional<Embedding> good_embedding;
  std::optional<Coloring> bad_coloring;
  std::size_t domain_size = 0;
  std::size_t g_embeddings = 0;
  std::uint64_t colorings_examined = 0;
  std::uint64_t embeddings_examined = 0;
  /// Set for the vacuous conventions.
  std::string note;
};

/// X in R(F, G, m, eps): for every m-coloring of the domain some j: G -> X
/// has all copies of F inside j within closed distance eps of one colour
/// class. No embedding of F into X: holds. No embedding of G: fails.
RamseyVerdict check_R(const MetricSpace& F, const MetricSpace& G, const MetricSpace& X, std::size_t m,
                      const Rational& eps, const RamseyOptions& opts = {});

/// First j: G -> X (enumeration order) that is monochromatic up to eps
/// for `coloring`.
std::optional<Embedding> good_embedding(const MetricSpace& F, const MetricSpace& G, const MetricSpace& X,
                                        const Rational& eps, RamseyMode mode, const Coloring& coloring);

struct FlipWitness {
  Coloring coloring;  ///< over the embeddings-mode domain of F in X
  /// Least positive distance of X; the coloring refutes R(F,F,2,eps) in
  /// embeddings mode exactly when eps < eps0.
  Rational eps0;
  bool refutes = false;
};

/// Colors the embedding i of a two-point F by whether i(0) < i(1), so i and
/// its flip always differ. Requires the distance of F to occur in X.
FlipWitness flip_coloring_witness(const MetricSpace& X, const MetricSpace& F, const Rational& eps);

struct RdmVerdict {
  bool holds = false;
  std::optional<PermutationIsometry> witness;
  std::size_t cover_index = 0;
  std::size_t group_order = 0;
};

/// Some g in the group generated by `group` maps K into the closed
/// eps-neighbourhood of one cover element. Throws unless the cover's union
/// is X.
RdmVerdict rdm_finite_check(const MetricSpace& X, const std::vector<PermutationIsometry>& group,
                            const std::vector<std::vector<std::size_t>>& cover, const Rational& eps,
                            const std::vector<std::size_t>& K);

// Independent re-checks: brute force over all injective maps, sharing no
// code with the search above.

/// True iff some G -> X is monochromatic up to eps for `coloring`, where
/// `coloring` is indexed in the domain order documented for RamseyDomain.
bool verify_some_good(const MetricSpace& F, const MetricSpace& G, const MetricSpace& X, const Rational& eps,
                      RamseyMode mode, const Coloring& coloring);
/// True iff j is an embedding G -> X that is monochromatic up to eps.
bool verify_good(const MetricSpace& F, const MetricSpace& G, const MetricSpace& X, const Rational& eps,
                 RamseyMode mode, const Coloring& coloring, const Embedding& j);
/// Domain size as the re-check counts it.
std::size_t verify_domain_size(const MetricSpace& F, const MetricSpace& X, RamseyMode mode);

}  // namespace urysohn
