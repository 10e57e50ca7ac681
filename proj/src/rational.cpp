#include "preper/rational.hpp"

#include <cctype>
#include <ostream>

#include "preper/error.hpp"

namespace preper {

BigRat::BigRat(const BigInt& num, const BigInt& den) {
  if (sgn(den) == 0) fail(errc::usage, "rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

BigRat::BigRat(long num, long den) : BigRat(BigInt(num), BigInt(den)) {}

BigRat BigRat::operator/(const BigRat& o) const {
  if (o.is_zero()) fail(errc::usage, "division by zero");
  return BigRat(static_cast<mpq_class>(v_ / o.v_));
}

BigRat BigRat::parse(const std::string& text) {
  auto bad = [&] { fail(errc::usage, "not a rational: '" + text + "'"); };
  if (text.empty()) bad();
  std::string num = text, den = "1";
  if (auto slash = text.find('/'); slash != std::string::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  auto check = [&](const std::string& s, bool sign_ok) {
    if (s.empty()) bad();
    size_t i = (sign_ok && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) bad();
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) bad();
  };
  check(num, true);
  check(den, false);
  BigInt n(num), d(den);
  if (sgn(d) == 0) bad();
  return BigRat(n, d);
}

BigInt BigRat::ceil_abs() const {
  BigInt q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), BigInt(::abs(num())).get_mpz_t(), den().get_mpz_t());
  if (r != 0) q += 1;
  return q;
}

std::string BigRat::str() const {
  std::string s = num().get_str();
  if (den() != 1) s += "/" + den().get_str();
  return s;
}

std::ostream& operator<<(std::ostream& os, const BigRat& q) { return os << q.str(); }

std::optional<BigRat> sqrt_rat(const BigRat& q) {
  if (sgn(q.num()) < 0) return std::nullopt;
  BigInt n = q.num(), d = q.den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  BigInt rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return BigRat(rn, rd);
}

}  // namespace preper
