#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace urysohn {

/// Raised when an exact operation would leave the 64-bit range.
class RationalOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always kept in lowest terms with a positive denominator. Intermediate
/// products are formed in 128 bits and normalized; a result that does not fit
/// back into 64 bits throws RationalOverflow instead of wrapping.
class Rational {
 public:
  using int_type = std::int64_t;

  constexpr Rational() = default;
  constexpr Rational(int_type value) : num_(value) {}  // NOLINT: implicit by design of a number type
  Rational(int_type num, int_type den);

  /// Parses `p/q`, `-p/q` or a plain integer.
  static Rational parse(std::string_view text);

  int_type num() const { return num_; }
  int_type den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  /// Largest integer not exceeding the value.
  int_type floor() const;
  /// Smallest integer not below the value.
  int_type ceil() const;

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_wide(__int128 num, __int128 den);

  int_type num_ = 0;
  int_type den_ = 1;
};

Rational abs(const Rational& x);
std::ostream& operator<<(std::ostream& os, const Rational& x);

/// Least common multiple of two positive denominators, overflow-checked.
std::int64_t lcm_checked(std::int64_t a, std::int64_t b);

}  // namespace urysohn

template <>
struct std::hash<urysohn::Rational> {
  std::size_t operator()(const urysohn::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
  }
};

namespace Eigen {

template <>
struct NumTraits<urysohn::Rational> : GenericNumTraits<urysohn::Rational> {
  using Real = urysohn::Rational;
  using NonInteger = urysohn::Rational;
  using Nested = urysohn::Rational;
  using Literal = urysohn::Rational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 8
  };

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 18; }
};

}  // namespace Eigen
