#include "urysohn/quotient.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <thread>

namespace urysohn {
namespace {

constexpr PermutationQuotient::Index empty_slot = std::numeric_limits<PermutationQuotient::Index>::max();

bool is_identity_span(std::span<const PermutationQuotient::Index> p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

}  // namespace

PermutationQuotient::PermutationQuotient(std::size_t degree, std::vector<PermutationIsometry> generators)
    : degree_(degree), generators_(std::move(generators)) {
  if (degree_ == 0) throw std::invalid_argument("quotient: degree must be positive");
  if (degree_ >= empty_slot) throw std::invalid_argument("quotient: degree too large");
  if (generators_.size() > 127) throw std::invalid_argument("quotient: too many generators");
  for (const auto& g : generators_) {
    if (g.size() != degree_ || !is_permutation(g.images))
      throw std::invalid_argument("quotient: generator is not a permutation of the given degree");
    letters_.push_back(g);
    letters_.push_back(g.inverse());
  }
}

PermutationIsometry PermutationQuotient::permutation_of(const Word& w) const {
  auto p = PermutationIsometry::identity(degree_);
  for (Letter l : w.letters()) {
    if (l >= letters_.size()) throw std::out_of_range("quotient: word uses an unknown generator");
    p = p * letters_[l];
  }
  return p;
}

std::uint64_t PermutationQuotient::hash(std::span<const Index> perm) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (Index v : perm) h = (h ^ v) * 0x100000001b3ull + (h >> 29);
  return h;
}

std::size_t PermutationQuotient::slot(std::span<const Index> perm) const {
  const std::size_t mask = table_.size() - 1;
  std::size_t s = hash(perm) & mask;
  while (table_[s] != empty_slot) {
    auto e = element(table_[s]);
    if (std::equal(e.begin(), e.end(), perm.begin())) return s;
    s = (s + 1) & mask;
  }
  return s;
}

std::optional<PermutationQuotient::Index> PermutationQuotient::index_of(std::span<const Index> perm) const {
  if (!materialized_) throw std::logic_error("quotient: not materialized");
  if (perm.size() != degree_) return std::nullopt;
  Index v = table_[slot(perm)];
  if (v == empty_slot) return std::nullopt;
  return v;
}

bool PermutationQuotient::materialize(std::size_t cap) {
  if (materialized_) return order_ <= cap;
  const std::size_t nl = letters_.size();
  elements_.clear();
  rmul_.clear();
  table_.assign(1024, empty_slot);
  std::vector<Index> buf(degree_);
  auto insert = [&](std::span<const Index> perm) -> Index {
    if ((order_ + 1) * 2 > table_.size()) {
      table_.assign(table_.size() * 2, empty_slot);
      for (std::size_t q = 0; q < order_; ++q) table_[slot(element(static_cast<Index>(q)))] = static_cast<Index>(q);
    }
    std::size_t s = slot(perm);
    if (table_[s] != empty_slot) return table_[s];
    elements_.insert(elements_.end(), perm.begin(), perm.end());
    table_[s] = static_cast<Index>(order_);
    return static_cast<Index>(order_++);
  };
  order_ = 0;
  for (std::size_t i = 0; i < degree_; ++i) buf[i] = static_cast<Index>(i);
  insert(buf);
  for (std::size_t q = 0; q < order_; ++q) {
    for (std::size_t l = 0; l < nl; ++l) {
      auto cur = element(static_cast<Index>(q));
      const auto& s = letters_[l].images;
      for (std::size_t x = 0; x < degree_; ++x) buf[x] = cur[s[x]];
      Index r = insert(buf);
      if (order_ > cap) {
        order_ = 0;
        elements_.clear();
        elements_.shrink_to_fit();
        rmul_.clear();
        rmul_.shrink_to_fit();
        table_.clear();
        table_.shrink_to_fit();
        return false;
      }
      rmul_.push_back(r);
    }
  }
  materialized_ = true;
  return true;
}

PermutationIsometry PermutationQuotient::element_permutation(Index q) const {
  auto e = element(q);
  return {std::vector<std::size_t>(e.begin(), e.end())};
}

PermutationQuotient::Index PermutationQuotient::image(const Word& w) const {
  if (!materialized_) throw std::logic_error("quotient: not materialized");
  Index q = 0;
  for (Letter l : w.letters()) {
    if (l >= letters_.size()) throw std::out_of_range("quotient: word uses an unknown generator");
    q = rmul(q, l);
  }
  return q;
}

PermutationQuotient::Index PermutationQuotient::multiply(Index p, Index q) const {
  auto a = element(p), b = element(q);
  std::vector<Index> c(degree_);
  for (std::size_t x = 0; x < degree_; ++x) c[x] = a[b[x]];
  return *index_of(c);
}

PermutationQuotient::Index PermutationQuotient::inverse(Index q) const {
  auto a = element(q);
  std::vector<Index> c(degree_);
  for (std::size_t x = 0; x < degree_; ++x) c[a[x]] = static_cast<Index>(x);
  return *index_of(c);
}

KernelVerdict kernel_check_enumerate(const PermutationQuotient& Q, std::size_t N) {
  KernelVerdict out;
  out.route = KernelVerdict::Route::enumeration;
  const std::size_t nl = 2 * Q.rank();
  const std::size_t deg = Q.degree();
  if (N == 0 || nl == 0) return out;
  // Depth-first in lexicographic order; a killed word found at some length
  // bounds the depth for the rest of the search, so the first one found at
  // the final bound is shortlex-first.
  std::size_t bound = N;
  std::vector<Letter> word;
  std::vector<std::vector<PermutationQuotient::Index>> stack(N + 1, std::vector<PermutationQuotient::Index>(deg));
  std::iota(stack[0].begin(), stack[0].end(), PermutationQuotient::Index(0));
  std::vector<std::size_t> next(N + 1, 0);
  std::size_t depth = 0;
  while (true) {
    if (depth < bound && next[depth] < nl) {
      Letter l = static_cast<Letter>(next[depth]++);
      if (depth > 0 && word.back() == inverse_letter(l)) continue;
      const auto& s = Q.letter_permutation(l).images;
      auto& child = stack[depth + 1];
      const auto& parent = stack[depth];
      for (std::size_t x = 0; x < deg; ++x) child[x] = parent[s[x]];
      word.push_back(l);
      ++out.words_checked;
      ++depth;
      next[depth] = 0;
      if (is_identity_span(child)) {
        if (!out.first_killed || depth < out.first_killed->length()) {
          out.passed = false;
          out.first_killed = Word::reduce(word);
          bound = depth - 1;
        }
        word.pop_back();
        --depth;
      }
      continue;
    }
    if (depth == 0) break;
    word.pop_back();
    --depth;
  }
  return out;
}

std::optional<Word> shortest_relator(const PermutationQuotient& Q) {
  if (!Q.materialized()) throw std::logic_error("shortest_relator: quotient not materialized");
  const std::size_t nl = 2 * Q.rank();
  if (nl == 0) return std::nullopt;
  using Index = PermutationQuotient::Index;
  const std::size_t states = Q.order() * nl;
  constexpr std::uint64_t unseen = std::numeric_limits<std::uint64_t>::max();
  // parent[state] = previous state (or `root`), state = element * nl + last.
  constexpr std::uint64_t root = unseen - 1;
  std::vector<std::uint64_t> parent(states, unseen);
  std::deque<std::uint64_t> queue;
  auto rebuild = [&](std::uint64_t s) {
    std::vector<Letter> letters;
    while (s != root) {
      letters.push_back(static_cast<Letter>(s % nl));
      s = parent[s];
    }
    std::reverse(letters.begin(), letters.end());
    return Word::reduce(letters);
  };
  for (std::size_t l = 0; l < nl; ++l) {
    Index q = Q.rmul(0, static_cast<Letter>(l));
    std::uint64_t s = std::uint64_t(q) * nl + l;
    if (parent[s] != unseen) continue;
    parent[s] = root;
    if (q == 0) return rebuild(s);
    queue.push_back(s);
  }
  while (!queue.empty()) {
    std::uint64_t s = queue.front();
    queue.pop_front();
    Index q = static_cast<Index>(s / nl);
    Letter last = static_cast<Letter>(s % nl);
    for (std::size_t l = 0; l < nl; ++l) {
      if (static_cast<Letter>(l) == inverse_letter(last)) continue;
      Index r = Q.rmul(q, static_cast<Letter>(l));
      std::uint64_t t = std::uint64_t(r) * nl + l;
      if (parent[t] != unseen) continue;
      parent[t] = s;
      if (r == 0) return rebuild(t);
      queue.push_back(t);
    }
  }
  throw std::logic_error("shortest_relator: finite group without relator");
}

std::size_t kernel_free_radius(const PermutationQuotient& Q) {
  auto r = shortest_relator(Q);
  if (!r) return std::numeric_limits<std::size_t>::max();
  return r->length() - 1;
}

KernelVerdict kernel_check(const PermutationQuotient& Q, std::size_t N, std::size_t enumeration_limit) {
  if (ball_size(Q.rank(), N) <= enumeration_limit) return kernel_check_enumerate(Q, N);
  if (!Q.materialized())
    throw QuotientError("kernel_check: ball(" + std::to_string(N) +
                        ") too large to enumerate and the quotient is not materialized");
  KernelVerdict out;
  out.route = KernelVerdict::Route::relator_search;
  auto r = shortest_relator(Q);
  if (r && r->length() <= N) {
    out.passed = false;
    out.first_killed = r;
  }
  return out;
}

PermutationQuotient ball_perm_quotient(std::size_t rank, std::size_t N) {
  auto words = ball(rank, N);
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < words.size(); ++i) index.emplace(words[i], i);
  std::vector<PermutationIsometry> gens;
  for (std::size_t k = 0; k < rank; ++k) {
    Word g = Word::generator(k);
    std::vector<std::size_t> images(words.size(), std::numeric_limits<std::size_t>::max());
    std::vector<bool> hit(words.size(), false);
    for (std::size_t i = 0; i < words.size(); ++i) {
      auto it = index.find(g * words[i]);
      if (it == index.end()) continue;
      images[i] = it->second;
      hit[it->second] = true;
    }
    std::size_t free_target = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (images[i] != std::numeric_limits<std::size_t>::max()) continue;
      while (hit[free_target]) ++free_target;
      images[i] = free_target;
      hit[free_target] = true;
    }
    gens.push_back({std::move(images)});
  }
  return PermutationQuotient(words.size(), std::move(gens));
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

PermutationQuotient random_quotient(std::size_t rank, std::size_t degree, std::uint64_t attempt_seed) {
  std::mt19937_64 rng(attempt_seed);
  std::vector<PermutationIsometry> gens;
  for (std::size_t k = 0; k < rank; ++k) {
    auto p = PermutationIsometry::identity(degree);
    std::shuffle(p.images.begin(), p.images.end(), rng);
    gens.push_back(std::move(p));
  }
  return PermutationQuotient(degree, std::move(gens));
}

SearchOutcome random_search(std::size_t rank, const RandomSearch& opts, std::size_t cap,
                            const std::function<bool(const PermutationQuotient&)>& accept, unsigned jobs) {
  SearchOutcome out;
  jobs = std::max(1u, jobs);
  for (std::size_t base = 0; base < opts.attempts; base += jobs) {
    std::size_t count = std::min<std::size_t>(jobs, opts.attempts - base);
    std::vector<std::optional<PermutationQuotient>> found(count);
    auto run = [&](std::size_t t) {
      auto q = random_quotient(rank, opts.degree, split_seed(opts.seed, base + t));
      if (q.materialize(cap) && accept(q)) found[t] = std::move(q);
    };
    if (count == 1) {
      run(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < count; ++t) pool.emplace_back(run, t);
      for (auto& th : pool) th.join();
    }
    for (std::size_t t = 0; t < count; ++t) {
      if (found[t]) {
        out.quotient = std::move(found[t]);
        out.accepted_attempt = base + t;
        out.attempts_tried = base + t + 1;
        return out;
      }
    }
    out.attempts_tried = base + count;
  }
  return out;
}

SearchOutcome random_search(std::size_t rank, std::size_t N, const RandomSearch& opts, std::size_t cap,
                            unsigned jobs) {
  return random_search(
      rank, opts, cap, [N](const PermutationQuotient& q) { return kernel_free_radius(q) >= N; }, jobs);
}

}  // namespace urysohn
