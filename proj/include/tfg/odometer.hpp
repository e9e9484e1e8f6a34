#pragma once

// The base-p odometer x -> x + 1 on p-adic digit sequences, together with
// eventually periodic points (the rational p-adic integers), on which every
// orbit question is decidable by exact rational arithmetic.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "tfg/clopen.hpp"

namespace tfg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "<numerator>/<denominator>" in lowest terms; the denominator is always
/// written, even when it is 1.
std::string to_string(const Rational& r);

/// The sequence preperiod . period^inf, stored with the shortest period and
/// then the shortest preperiod.
class Point {
 public:
  /// Throws Representation on an empty period or an out-of-range digit.
  Point(int base, Digits preperiod, Digits period);

  /// The p-adic expansion of a rational whose denominator is prime to p.
  static Point from_rational(int base, const Rational& value);

  int base() const noexcept { return base_; }
  const Digits& preperiod() const noexcept { return pre_; }
  const Digits& period() const noexcept { return per_; }

  Digit digit(std::size_t i) const noexcept;
  Digits prefix(std::size_t k) const;

  /// The rational a/b with gcd(b, p) = 1 whose p-adic expansion this is.
  Rational to_rational() const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  int base_;
  Digits pre_;
  Digits per_;
};

bool contains(const ClopenSet& set, const Point& x);

/// Digit-wise p-adic value of a word; throws Representation when it does not
/// fit into 63 bits.
std::int64_t word_value(int base, const Digits& w);

/// p^k, throwing Representation on overflow.
std::int64_t checked_power(int base, std::size_t k);

class OdometerSystem {
 public:
  explicit OdometerSystem(int base);

  int base() const noexcept { return base_; }

  /// x + n in the p-adic integers.
  Point apply_power(std::int64_t n, const Point& x) const;

  /// The depth-|w| word w' with value(w') = value(w) + n mod p^|w|.
  Digits cylinder_image(std::int64_t n, const Digits& w) const;

  /// The n with y = x + n, if the difference is an integer.
  std::optional<std::int64_t> same_orbit(const Point& x, const Point& y) const;

  /// Invariant probability of a clopen set: sum of p^-|w| over its words.
  Rational measure_value(const ClopenSet& a) const;

  friend bool operator==(const OdometerSystem&, const OdometerSystem&) = default;

 private:
  int base_;
};

}  // namespace tfg
