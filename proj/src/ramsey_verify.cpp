// Brute-force re-checks for Ramsey witnesses. Deliberately naive and written
// without the search tables: every injective map is generated by an
// odometer and tested pair by pair.

#include <algorithm>
#include <map>

#include "urysohn/ramsey.hpp"

namespace urysohn {
namespace {

using Map = std::vector<std::size_t>;

bool distance_preserving(const MetricSpace& A, const MetricSpace& B, const Map& f) {
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t b = 0; b < f.size(); ++b) {
      if (a != b && f[a] == f[b]) return false;
      if (B(f[a], f[b]) != A(a, b)) return false;
    }
  return true;
}

// All maps A -> B preserving distances, lexicographic in (f[0], f[1], ...).
std::vector<Map> all_isometric_maps(const MetricSpace& A, const MetricSpace& B) {
  std::vector<Map> out;
  const std::size_t k = A.size(), n = B.size();
  if (k == 0) return {Map{}};
  if (n == 0) return out;
  Map f(k, 0);
  while (true) {
    if (distance_preserving(A, B, f)) out.push_back(f);
    std::size_t pos = k;
    while (pos > 0) {
      if (++f[pos - 1] < n) break;
      f[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return out;
}

Rational sup_distance(const MetricSpace& X, const Map& a, const Map& b) {
  Rational d(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (X(a[i], b[i]) > d) d = X(a[i], b[i]);
  return d;
}

struct NaiveDomain {
  std::vector<Map> maps;               // all F -> X, lexicographic
  std::vector<std::size_t> element;    // map -> element
  std::size_t size = 0;
};

NaiveDomain naive_domain(const MetricSpace& F, const MetricSpace& X, RamseyMode mode) {
  NaiveDomain d;
  d.maps = all_isometric_maps(F, X);
  std::map<Map, std::size_t> by_image;
  for (const auto& f : d.maps) {
    if (mode == RamseyMode::embeddings) {
      d.element.push_back(d.size++);
      continue;
    }
    Map img = f;
    std::sort(img.begin(), img.end());
    auto it = by_image.find(img);
    if (it == by_image.end()) it = by_image.emplace(img, d.size++).first;
    d.element.push_back(it->second);
  }
  return d;
}

// Element e lies within eps of some element coloured c.
bool near_colour(const NaiveDomain& d, const MetricSpace& X, const Coloring& coloring, std::size_t e_map,
                 unsigned colour, const Rational& eps) {
  for (std::size_t k = 0; k < d.maps.size(); ++k) {
    if (coloring[d.element[k]] != colour) continue;
    // In subspaces mode the distance of two copies is the least over their
    // reindexings; scanning every map of both classes covers that.
    for (std::size_t r = 0; r < d.maps.size(); ++r) {
      if (d.element[r] != d.element[e_map]) continue;
      if (sup_distance(X, d.maps[r], d.maps[k]) <= eps) return true;
    }
  }
  return false;
}

bool naive_good(const MetricSpace& F, const MetricSpace& G, const MetricSpace& X, const Rational& eps,
                const NaiveDomain& d, const Coloring& coloring, const Map& j) {
  auto f_in_g = all_isometric_maps(F, G);
  unsigned colours = 0;
  for (auto c : coloring) colours = std::max(colours, c + 1);
  for (unsigned c = 0; c < std::max(colours, 1u); ++c) {
    bool all = true;
    for (const auto& f : f_in_g) {
      Map composed(f.size());
      for (std::size_t a = 0; a < f.size(); ++a) composed[a] = j[f[a]];
      auto it = std::find(d.maps.begin(), d.maps.end(), composed);
      if (it == d.maps.end()) return false;  // cannot happen for a genuine embedding
      if (!near_colour(d, X, coloring, static_cast<std::size_t>(it - d.maps.begin()), c, eps)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

std::size_t verify_domain_size(const MetricSpace& F, const MetricSpace& X, RamseyMode mode) {
  return naive_domain(F, X, mode).size;
}

bool verify_good(const MetricSpace& F, const MetricSpace& G, const MetricSpace& X, const Rational& eps,
                 RamseyMode mode, const Coloring& coloring, const Embedding& j) {
  auto d = naive_domain(F, X, mode);
  if (coloring.size() != d.size) return false;
  if (j.map.size() != G.size()) return false;
  for (auto x : j.map)
    if (x >= X.size()) return false;
  if (!distance_preserving(G, X, j.map)) return false;
  return naive_good(F, G, X, eps, d, coloring, j.map);
}

bool verify_some_good(const MetricSpace& F, const MetricSpace& G, const MetricSpace& X, const Rational& eps,
                      RamseyMode mode, const Coloring& coloring) {
  auto d = naive_domain(F, X, mode);
  if (coloring.size() != d.size) throw std::invalid_argument("verify_some_good: coloring size differs from domain");
  for (const auto& j : all_isometric_maps(G, X))
    if (naive_good(F, G, X, eps, d, coloring, j)) return true;
  return false;
}

}  // namespace urysohn
