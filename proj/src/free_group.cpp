#include "urysohn/free_group.hpp"

#include <cctype>
#include <stdexcept>

namespace urysohn {

Word Word::reduce(const std::vector<Letter>& letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back() == inverse_letter(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out), 0);
}

Word Word::parse(std::string_view text) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
  };
  skip();
  if (i < text.size() && text[i] == 'e') {
    ++i;
    skip();
    if (i != text.size()) throw std::invalid_argument("word: trailing text after identity");
    return {};
  }
  while (i < text.size()) {
    if (text[i] != 'g') throw std::invalid_argument("word: expected 'g' at offset " + std::to_string(i));
    ++i;
    std::size_t start = i;
    std::size_t k = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) k = 10 * k + (text[i++] - '0');
    if (i == start || k == 0 || k > 128) throw std::invalid_argument("word: bad generator index");
    bool inv = false;
    if (text.substr(i, 3) == "^-1") {
      inv = true;
      i += 3;
    }
    letters.push_back(make_letter(k - 1, inv));
    skip();
  }
  return reduce(letters);
}

std::string Word::str() const {
  if (letters_.empty()) return "e";
  std::string out;
  for (Letter l : letters_) {
    if (!out.empty()) out += ' ';
    out += 'g' + std::to_string(generator_of(l) + 1);
    if (is_inverse(l)) out += "^-1";
  }
  return out;
}

std::size_t Word::rank() const {
  std::size_t r = 0;
  for (Letter l : letters_) r = std::max(r, generator_of(l) + 1);
  return r;
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l = inverse_letter(l);
  return Word(std::move(out), 0);
}

Word Word::times(Letter l) const {
  std::vector<Letter> out = letters_;
  if (!out.empty() && out.back() == inverse_letter(l)) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
  return Word(std::move(out), 0);
}

Word operator*(const Word& u, const Word& v) {
  std::size_t cancel = 0;
  while (cancel < u.length() && cancel < v.length() &&
         u.letters_[u.length() - 1 - cancel] == inverse_letter(v.letters_[cancel]))
    ++cancel;
  std::vector<Letter> out(u.letters_.begin(), u.letters_.end() - cancel);
  out.insert(out.end(), v.letters_.begin() + cancel, v.letters_.end());
  return Word(std::move(out), 0);
}

std::size_t ball_size(std::size_t rank, std::size_t radius) {
  std::size_t total = 1, level = rank == 0 ? 0 : 2 * rank;
  for (std::size_t k = 1; k <= radius && level > 0; ++k) {
    total += level;
    level *= 2 * rank - 1;
  }
  return total;
}

std::vector<Word> ball(std::size_t rank, std::size_t radius) {
  std::vector<Word> out{Word()};
  std::size_t level_begin = 0;
  for (std::size_t k = 1; k <= radius && rank > 0; ++k) {
    std::size_t level_end = out.size();
    for (std::size_t w = level_begin; w < level_end; ++w) {
      for (std::size_t l = 0; l < 2 * rank; ++l) {
        const auto& letters = out[w].letters();
        if (!letters.empty() && letters.back() == inverse_letter(static_cast<Letter>(l))) continue;
        out.push_back(out[w].times(static_cast<Letter>(l)));
      }
    }
    level_begin = level_end;
  }
  return out;
}

}  // namespace urysohn
