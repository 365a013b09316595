#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace urysohn {

/// Letter code 2k + s for generator k (0-based), s = 1 for the inverse.
/// Canonical letter order is therefore g1, g1^-1, g2, g2^-1, ...
using Letter = std::uint8_t;

constexpr Letter make_letter(std::size_t generator, bool inverse) {
  return static_cast<Letter>(2 * generator + (inverse ? 1 : 0));
}
constexpr std::size_t generator_of(Letter l) { return l >> 1; }
constexpr bool is_inverse(Letter l) { return l & 1; }
constexpr Letter inverse_letter(Letter l) { return l ^ 1; }

/// Freely reduced word in a free group. Ordered shortlex (length, then
/// lexicographic in letter codes).
class Word {
 public:
  Word() = default;

  /// Free reduction of an arbitrary letter sequence.
  static Word reduce(const std::vector<Letter>& letters);
  static Word generator(std::size_t k, bool inverse = false) { return Word({make_letter(k, inverse)}, 0); }

  /// Text form: "e" for the identity, otherwise letters like "g1 g2^-1"
  /// (1-based). Whitespace and '*' between letters are optional.
  static Word parse(std::string_view text);
  std::string str() const;

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  /// One more than the highest generator index used (0 for the identity).
  std::size_t rank() const;

  Word inverse() const;
  /// Appends one letter, cancelling if it is inverse to the last one.
  Word times(Letter l) const;

  friend Word operator*(const Word& u, const Word& v);
  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.length() <=> b.length(); c != 0) return c;
    return a.letters_ <=> b.letters_;
  }

 private:
  Word(std::vector<Letter> letters, int) : letters_(std::move(letters)) {}
  std::vector<Letter> letters_;
};

/// Number of reduced words of length <= radius over `rank` generators.
std::size_t ball_size(std::size_t rank, std::size_t radius);

/// All reduced words of length <= radius, identity first, shortlex order.
std::vector<Word> ball(std::size_t rank, std::size_t radius);

}  // namespace urysohn
