#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "urysohn/metric_space.hpp"

namespace urysohn {

/// Injective distance-preserving map F -> X; `map[a]` is the image of a.
struct Embedding {
  std::vector<std::size_t> map;

  std::size_t operator()(std::size_t a) const { return map[a]; }
  std::size_t size() const { return map.size(); }
  friend bool operator==(const Embedding&, const Embedding&) = default;
  friend auto operator<=>(const Embedding&, const Embedding&) = default;
};

/// Permutation of the points of a space, `images[x]` = g(x).
struct PermutationIsometry {
  std::vector<std::size_t> images;

  static PermutationIsometry identity(std::size_t n) {
    PermutationIsometry p;
    p.images.resize(n);
    std::iota(p.images.begin(), p.images.end(), std::size_t(0));
    return p;
  }

  std::size_t operator()(std::size_t x) const { return images[x]; }
  std::size_t size() const { return images.size(); }
  bool is_identity() const {
    for (std::size_t i = 0; i < images.size(); ++i)
      if (images[i] != i) return false;
    return true;
  }

  PermutationIsometry inverse() const {
    PermutationIsometry p;
    p.images.resize(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) p.images[images[i]] = i;
    return p;
  }

  friend bool operator==(const PermutationIsometry&, const PermutationIsometry&) = default;
  friend auto operator<=>(const PermutationIsometry&, const PermutationIsometry&) = default;
};

/// (a * b)(x) = a(b(x)).
inline PermutationIsometry operator*(const PermutationIsometry& a, const PermutationIsometry& b) {
  if (a.size() != b.size()) throw std::invalid_argument("composing permutations of different size");
  PermutationIsometry p;
  p.images.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) p.images[i] = a.images[b.images[i]];
  return p;
}

inline bool is_permutation(const std::vector<std::size_t>& images) {
  std::vector<bool> hit(images.size(), false);
  for (auto v : images) {
    if (v >= images.size() || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

template <typename Scalar>
bool is_isometry(const BasicMetricSpace<Scalar>& X, const PermutationIsometry& g) {
  if (g.size() != X.size() || !is_permutation(g.images)) return false;
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = i + 1; j < X.size(); ++j)
      if (X(g(i), g(j)) != X(i, j)) return false;
  return true;
}

template <typename Scalar>
bool is_embedding(const BasicMetricSpace<Scalar>& F, const BasicMetricSpace<Scalar>& X, const Embedding& e) {
  if (e.size() != F.size()) return false;
  for (std::size_t a = 0; a < F.size(); ++a) {
    if (e(a) >= X.size()) return false;
    for (std::size_t b = a + 1; b < F.size(); ++b)
      if (e(a) == e(b) || X(e(a), e(b)) != F(a, b)) return false;
  }
  return true;
}

/// Every isometric embedding F -> X, ordered lexicographically by the image
/// tuple (map[0], map[1], ...). Backtracking with exact distance pruning.
template <typename Scalar>
std::vector<Embedding> enumerate_embeddings(const BasicMetricSpace<Scalar>& F, const BasicMetricSpace<Scalar>& X) {
  std::vector<Embedding> out;
  const std::size_t nf = F.size();
  const std::size_t nx = X.size();
  if (nf == 0) {
    out.push_back({});
    return out;
  }
  if (nf > nx) return out;
  std::vector<std::size_t> map(nf);
  std::vector<bool> used(nx, false);
  // Explicit stack instead of recursion: depth = number of assigned points.
  std::vector<std::size_t> next(nf + 1, 0);
  std::size_t depth = 0;
  while (true) {
    bool placed = false;
    for (std::size_t x = next[depth]; x < nx; ++x) {
      if (used[x]) continue;
      bool fits = true;
      for (std::size_t a = 0; a < depth && fits; ++a) fits = X(map[a], x) == F(a, depth);
      if (!fits) continue;
      map[depth] = x;
      next[depth] = x + 1;
      placed = true;
      break;
    }
    if (!placed) {
      if (depth == 0) break;
      --depth;
      used[map[depth]] = false;
      continue;
    }
    if (depth + 1 == nf) {
      out.push_back({map});
      continue;  // try the next candidate at this depth
    }
    used[map[depth]] = true;
    ++depth;
    next[depth] = 0;
  }
  return out;
}

/// Iso(X) as permutations, identity first, lexicographic order.
template <typename Scalar>
std::vector<PermutationIsometry> isometry_group(const BasicMetricSpace<Scalar>& X) {
  std::vector<PermutationIsometry> out;
  for (auto& e : enumerate_embeddings(X, X)) out.push_back({std::move(e.map)});
  return out;
}

/// Closure of a set of permutations under composition (a finite group).
/// Identity first, remaining elements in breadth-first discovery order.
std::vector<PermutationIsometry> permutation_closure(const std::vector<PermutationIsometry>& generators,
                                                     std::size_t degree);

}  // namespace urysohn
