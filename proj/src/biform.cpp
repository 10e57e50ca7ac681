#include "preper/biform.hpp"

#include "preper/error.hpp"

namespace preper {

BiForm::BiForm(int d1, int d2) : d1_(d1), d2_(d2) {
  if (d1 < 0 || d2 < 0) fail(errc::usage, "negative bidegree");
  c_.assign(static_cast<size_t>(d1 + 1) * (d2 + 1), BigInt(0));
}

BiForm::BiForm(int d1, int d2, std::initializer_list<Entry> entries)
    : BiForm(d1, d2) {
  for (const Entry& e : entries) c_[idx(e.i, e.j)] = BigInt(e.c);
}

int BiForm::idx(int i, int j) const {
  if (i < 0 || i > d1_ || j < 0 || j > d2_)
    fail(errc::usage, "coefficient index outside the bidegree grid");
  return i * (d2_ + 1) + j;
}

bool BiForm::is_zero() const {
  for (const BigInt& v : c_)
    if (v != 0) return false;
  return true;
}

bool BiForm::operator==(const BiForm& o) const {
  return d1_ == o.d1_ && d2_ == o.d2_ && c_ == o.c_;
}

std::vector<BigInt> BiForm::specialize_x(const BigInt& a, const BigInt& b) const {
  // Powers a^i b^(d1-i) for i = 0..d1.
  std::vector<BigInt> xpow(d1_ + 1);
  xpow[0] = 1;
  for (int i = 1; i <= d1_; ++i) xpow[i] = xpow[i - 1] * a;
  BigInt bp(1);
  for (int i = d1_ - 1; i >= 0; --i) {
    bp *= b;
    xpow[i] *= bp;
  }
  std::vector<BigInt> out(d2_ + 1, BigInt(0));
  for (int i = 0; i <= d1_; ++i) {
    if (xpow[i] == 0) continue;
    for (int j = 0; j <= d2_; ++j) {
      const BigInt& cij = coeff(i, j);
      if (cij != 0) out[j] += cij * xpow[i];
    }
  }
  return out;
}

BigInt BiForm::eval(const P1xP1Point& P) const {
  std::vector<BigInt> f = specialize_x(P.x.a, P.x.b);
  // Evaluate sum_j f[j] c^j d^(d2-j) at (c : d).
  std::vector<BigInt> ypow(d2_ + 1);
  ypow[0] = 1;
  for (int j = 1; j <= d2_; ++j) ypow[j] = ypow[j - 1] * P.y.a;
  BigInt dp(1);
  for (int j = d2_ - 1; j >= 0; --j) {
    dp *= P.y.b;
    ypow[j] *= dp;
  }
  BigInt acc(0);
  for (int j = 0; j <= d2_; ++j) acc += f[j] * ypow[j];
  return acc;
}

BiForm BiForm::d_xnum() const {
  if (d1_ == 0) fail(errc::usage, "cannot derive a degree-0 side");
  BiForm out(d1_ - 1, d2_);
  for (int i = 1; i <= d1_; ++i)
    for (int j = 0; j <= d2_; ++j) out.set_coeff(i - 1, j, BigInt(i) * coeff(i, j));
  return out;
}

BiForm BiForm::d_xden() const {
  if (d1_ == 0) fail(errc::usage, "cannot derive a degree-0 side");
  BiForm out(d1_ - 1, d2_);
  for (int i = 0; i < d1_; ++i)
    for (int j = 0; j <= d2_; ++j)
      out.set_coeff(i, j, BigInt(d1_ - i) * coeff(i, j));
  return out;
}

BiForm BiForm::d_ynum() const {
  if (d2_ == 0) fail(errc::usage, "cannot derive a degree-0 side");
  BiForm out(d1_, d2_ - 1);
  for (int i = 0; i <= d1_; ++i)
    for (int j = 1; j <= d2_; ++j) out.set_coeff(i, j - 1, BigInt(j) * coeff(i, j));
  return out;
}

BiForm BiForm::d_yden() const {
  if (d2_ == 0) fail(errc::usage, "cannot derive a degree-0 side");
  BiForm out(d1_, d2_ - 1);
  for (int i = 0; i <= d1_; ++i)
    for (int j = 0; j < d2_; ++j)
      out.set_coeff(i, j, BigInt(d2_ - j) * coeff(i, j));
  return out;
}

BiForm BiForm::transposed() const {
  BiForm out(d2_, d1_);
  for (int i = 0; i <= d1_; ++i)
    for (int j = 0; j <= d2_; ++j) out.set_coeff(j, i, coeff(i, j));
  return out;
}

}  // namespace preper
