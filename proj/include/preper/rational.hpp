#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace preper {

using BigInt = mpz_class;

// Exact rational, always in lowest terms with positive denominator.
// Normalization happens at construction; equality is structural.
class BigRat {
 public:
  BigRat() : v_(0) {}
  BigRat(long n) : v_(n) {}
  BigRat(const BigInt& n) : v_(n) {}
  BigRat(const BigInt& num, const BigInt& den);
  BigRat(long num, long den);

  // Parses "n" or "n/d" with optional leading minus; throws errc::usage on junk.
  static BigRat parse(const std::string& text);

  const BigInt num() const { return v_.get_num(); }
  const BigInt den() const { return v_.get_den(); }

  BigRat operator+(const BigRat& o) const { return BigRat(v_ + o.v_); }
  BigRat operator-(const BigRat& o) const { return BigRat(v_ - o.v_); }
  BigRat operator*(const BigRat& o) const { return BigRat(v_ * o.v_); }
  BigRat operator/(const BigRat& o) const;
  BigRat operator-() const { return BigRat(static_cast<mpq_class>(-v_)); }

  bool operator==(const BigRat& o) const { return v_ == o.v_; }
  bool operator!=(const BigRat& o) const { return v_ != o.v_; }
  bool operator<(const BigRat& o) const { return v_ < o.v_; }
  bool operator<=(const BigRat& o) const { return v_ <= o.v_; }
  bool operator>(const BigRat& o) const { return v_ > o.v_; }
  bool operator>=(const BigRat& o) const { return v_ >= o.v_; }

  BigRat abs() const { return BigRat(static_cast<mpq_class>(::abs(v_))); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  // ceil(|this|), as an integer (used for orbit step bounds).
  BigInt ceil_abs() const;

  std::string str() const;

 private:
  explicit BigRat(const mpq_class& q) : v_(q) {}
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const BigRat& q);

// Ordering used wherever root sets are reported: by (den, num).
struct DenNumLess {
  bool operator()(const BigRat& a, const BigRat& b) const {
    if (a.den() != b.den()) return a.den() < b.den();
    return a.num() < b.num();
  }
};

// Exact square root in Q: present iff num and den are both perfect squares
// (negative input has none).
std::optional<BigRat> sqrt_rat(const BigRat& q);

}  // namespace preper
