#include "tfg/odometer.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "tfg/error.hpp"

namespace tfg {

namespace {

void check_digits(int base, const Digits& w) {
  for (Digit d : w)
    if (d >= base)
      fail(ErrorCode::Representation,
           "digit " + std::to_string(d) + " out of range for base " +
               std::to_string(base));
}

BigInt floor_mod(const BigInt& a, int p) {
  BigInt r = a % p;
  if (r < 0) r += p;
  return r;
}

std::int64_t floor_mod(std::int64_t a, int p) {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

BigInt digits_value(int base, const Digits& w) {
  BigInt v = 0;
  BigInt scale = 1;
  for (Digit d : w) {
    v += scale * d;
    scale *= base;
  }
  return v;
}

}  // namespace

std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

Point::Point(int base, Digits preperiod, Digits period)
    : base_(base), pre_(std::move(preperiod)), per_(std::move(period)) {
  check_base(base);
  check_digits(base, pre_);
  check_digits(base, per_);
  if (per_.empty()) fail(ErrorCode::Representation, "point period is empty");

  const std::size_t n = per_.size();
  for (std::size_t q = 1; q < n; ++q) {
    if (n % q != 0) continue;
    bool periodic = true;
    for (std::size_t i = q; i < n && periodic; ++i)
      periodic = per_[i] == per_[i - q];
    if (periodic) {
      per_.resize(q);
      break;
    }
  }
  // pre.c . (u c)^inf == pre . (c u)^inf
  while (!pre_.empty() && pre_.back() == per_.back()) {
    pre_.pop_back();
    std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
  }
}

Point Point::from_rational(int base, const Rational& value) {
  check_base(base);
  const BigInt den = boost::multiprecision::denominator(value);
  if (boost::multiprecision::gcd(den, BigInt(base)) != 1)
    fail(ErrorCode::Representation,
         "denominator of " + to_string(value) + " is not prime to " +
             std::to_string(base));
  const int den_mod = static_cast<int>(floor_mod(den, base));
  int inverse = 1;
  while ((inverse * den_mod) % base != 1) ++inverse;

  // value = a/den with x = d + p x'; the numerators are eventually periodic.
  BigInt a = boost::multiprecision::numerator(value);
  std::map<BigInt, std::size_t> seen;
  Digits digits;
  while (true) {
    auto [it, inserted] = seen.emplace(a, digits.size());
    if (!inserted) {
      Digits pre(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(it->second));
      Digits per(digits.begin() + static_cast<std::ptrdiff_t>(it->second), digits.end());
      return Point(base, std::move(pre), std::move(per));
    }
    const int d = static_cast<int>(floor_mod(floor_mod(a, base) * inverse, base));
    digits.push_back(static_cast<Digit>(d));
    a = (a - den * d) / base;
  }
}

Digit Point::digit(std::size_t i) const noexcept {
  if (i < pre_.size()) return pre_[i];
  return per_[(i - pre_.size()) % per_.size()];
}

Digits Point::prefix(std::size_t k) const {
  Digits out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = digit(i);
  return out;
}

Rational Point::to_rational() const {
  // x = P - p^k Q / (p^L - 1)
  const BigInt pre_value = digits_value(base_, pre_);
  const BigInt per_value = digits_value(base_, per_);
  const BigInt shift = boost::multiprecision::pow(BigInt(base_),
                                                  static_cast<unsigned>(pre_.size()));
  const BigInt cycle = boost::multiprecision::pow(
                           BigInt(base_), static_cast<unsigned>(per_.size())) - 1;
  return Rational(pre_value) - Rational(shift * per_value, cycle);
}

bool contains(const ClopenSet& set, const Point& x) {
  if (set.base() != x.base())
    fail(ErrorCode::Representation, "point and set have different bases");
  return std::any_of(set.words().begin(), set.words().end(),
                     [&](const Digits& w) {
                       for (std::size_t i = 0; i < w.size(); ++i)
                         if (x.digit(i) != w[i]) return false;
                       return true;
                     });
}

std::int64_t checked_power(int base, std::size_t k) {
  std::int64_t r = 1;
  for (std::size_t i = 0; i < k; ++i)
    if (__builtin_mul_overflow(r, static_cast<std::int64_t>(base), &r))
      fail(ErrorCode::Representation,
           std::to_string(base) + "^" + std::to_string(k) +
               " does not fit into 64 bits");
  return r;
}

std::int64_t word_value(int base, const Digits& w) {
  const BigInt v = digits_value(base, w);
  if (v > std::numeric_limits<std::int64_t>::max())
    fail(ErrorCode::Representation,
         "value of word " + digits_to_string(w) + " does not fit into 64 bits");
  return static_cast<std::int64_t>(v);
}

OdometerSystem::OdometerSystem(int base) : base_(base) { check_base(base); }

Point OdometerSystem::apply_power(std::int64_t n, const Point& x) const {
  if (x.base() != base_)
    fail(ErrorCode::Representation, "point base differs from system base");
  if (n == 0) return x;
  return Point::from_rational(base_, x.to_rational() + Rational(n));
}

Digits OdometerSystem::cylinder_image(std::int64_t n, const Digits& w) const {
  Digits out(w.size());
  std::int64_t rest = n;
  int carry = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto nd = floor_mod(rest, base_);
    rest = (rest - nd) / base_;
    const int sum = w[i] + static_cast<int>(nd) + carry;
    out[i] = static_cast<Digit>(sum % base_);
    carry = sum / base_;
  }
  return out;
}

std::optional<std::int64_t> OdometerSystem::same_orbit(const Point& x,
                                                       const Point& y) const {
  if (x.base() != base_ || y.base() != base_)
    fail(ErrorCode::Representation, "point base differs from system base");
  const Rational diff = y.to_rational() - x.to_rational();
  if (boost::multiprecision::denominator(diff) != 1) return std::nullopt;
  const BigInt n = boost::multiprecision::numerator(diff);
  if (n > std::numeric_limits<std::int64_t>::max() ||
      n < std::numeric_limits<std::int64_t>::min())
    fail(ErrorCode::Representation, "orbit offset does not fit into 64 bits");
  return static_cast<std::int64_t>(n);
}

Rational OdometerSystem::measure_value(const ClopenSet& a) const {
  if (a.base() != base_)
    fail(ErrorCode::Representation, "set base differs from system base");
  Rational total = 0;
  for (const Digits& w : a.words())
    total += Rational(BigInt(1), boost::multiprecision::pow(
                                     BigInt(base_), static_cast<unsigned>(w.size())));
  return total;
}

}  // namespace tfg
