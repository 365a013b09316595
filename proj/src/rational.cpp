#include "urysohn/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>

namespace urysohn {
namespace {

using wide = __int128;
using uwide = unsigned __int128;

uwide gcd_wide(uwide a, uwide b) {
  while (b != 0) {
    uwide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

uwide magnitude(wide x) { return x < 0 ? uwide(0) - uwide(x) : uwide(x); }

constexpr wide kMax = std::numeric_limits<std::int64_t>::max();
constexpr wide kMin = std::numeric_limits<std::int64_t>::min();

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("not a rational: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational::Rational(int_type num, int_type den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  uwide g = gcd_wide(magnitude(num), uwide(den));
  if (g > 1) {
    num /= wide(g);
    den /= wide(g);
  }
  if (num > kMax || num < kMin || den > kMax) {
    throw RationalOverflow("rational arithmetic exceeded 64-bit range");
  }
  Rational r;
  r.num_ = static_cast<int_type>(num);
  r.den_ = static_cast<int_type>(den);
  return r;
}

Rational Rational::parse(std::string_view text) {
  std::string_view whole = text;
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  auto slash = digits.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(digits, whole));
  std::int64_t p = parse_int(digits.substr(0, slash), whole);
  std::string_view qtext = digits.substr(slash + 1);
  if (!qtext.empty() && (qtext.front() == '-' || qtext.front() == '+')) {
    throw std::invalid_argument("not a rational: '" + std::string(whole) + "'");
  }
  std::int64_t q = parse_int(qtext, whole);
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
  return Rational(p, q);
}

Rational::int_type Rational::floor() const {
  int_type q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

Rational::int_type Rational::ceil() const {
  int_type q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return from_wide(-wide(num_), den_); }

Rational& Rational::operator+=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    *this = from_wide(wide(num_) + wide(rhs.num_), den_);
  } else {
    *this = from_wide(wide(num_) * rhs.den_ + wide(rhs.num_) * den_, wide(den_) * rhs.den_);
  }
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    *this = from_wide(wide(num_) - wide(rhs.num_), den_);
  } else {
    *this = from_wide(wide(num_) * rhs.den_ - wide(rhs.num_) * den_, wide(den_) * rhs.den_);
  }
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  *this = from_wide(wide(num_) * rhs.num_, wide(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("division by zero");
  *this = from_wide(wide(num_) * rhs.den_, wide(den_) * rhs.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  wide lhs = wide(a.num_) * b.den_;
  wide rhs = wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  uwide g = gcd_wide(uwide(a), uwide(b));
  wide l = wide(a) / wide(g) * wide(b);
  if (l > kMax) throw RationalOverflow("common denominator exceeded 64-bit range");
  return static_cast<std::int64_t>(l);
}

}  // namespace urysohn
