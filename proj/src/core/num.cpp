#include "core/num.hpp"

#include <sstream>

namespace bnet {

namespace {
unsigned g_precision = 0;
constexpr unsigned kGuardDigits = 20;
}  // namespace

void set_precision(unsigned digits10) {
  if (digits10 < 15 || digits10 > 10000)
    fail(Errc::Validation, "precision must be between 15 and 10000 digits");
  g_precision = digits10;
  Real::default_precision(digits10 + kGuardDigits);
}

namespace {
void ensure_precision() {
  if (g_precision == 0) set_precision(50);
}
}  // namespace

unsigned precision() {
  ensure_precision();
  return g_precision;
}

unsigned working_digits() { return precision() + kGuardDigits; }

Real pow10(long e) {
  ensure_precision();
  return boost::multiprecision::pow(Real(10), static_cast<int>(e));
}

Real default_tolerance() { return pow10(-(long)precision() + 10); }

Real to_real(const Rat& r) {
  ensure_precision();
  return Real(boost::multiprecision::numerator(r)) /
         Real(boost::multiprecision::denominator(r));
}

Real Num::to_real() const {
  if (exact()) return bnet::to_real(std::get<Rat>(v_));
  return std::get<Real>(v_);
}

bool Num::is_zero() const {
  if (exact()) return std::get<Rat>(v_).is_zero();
  return std::get<Real>(v_).is_zero();
}

bool Num::is_integer() const {
  return exact() && boost::multiprecision::denominator(rat()) == 1;
}

Int Num::as_integer() const {
  if (!is_integer()) fail(Errc::Internal, "integer value required");
  return boost::multiprecision::numerator(rat());
}

int Num::sign() const {
  if (exact()) return std::get<Rat>(v_).sign();
  return std::get<Real>(v_).sign();
}

Num Num::operator-() const {
  if (exact()) return Num(Rat(-std::get<Rat>(v_)));
  return Num(Real(-std::get<Real>(v_)));
}

Num& Num::operator+=(const Num& o) {
  if (exact() && o.exact())
    std::get<Rat>(v_) += std::get<Rat>(o.v_);
  else
    v_ = Real(to_real() + o.to_real());
  return *this;
}

Num& Num::operator-=(const Num& o) {
  if (exact() && o.exact())
    std::get<Rat>(v_) -= std::get<Rat>(o.v_);
  else
    v_ = Real(to_real() - o.to_real());
  return *this;
}

Num& Num::operator*=(const Num& o) {
  if (exact() && o.exact())
    std::get<Rat>(v_) *= std::get<Rat>(o.v_);
  else
    v_ = Real(to_real() * o.to_real());
  return *this;
}

Num& Num::operator/=(const Num& o) {
  if (o.is_zero()) fail(Errc::Internal, "division by zero");
  if (exact() && o.exact())
    std::get<Rat>(v_) /= std::get<Rat>(o.v_);
  else
    v_ = Real(to_real() / o.to_real());
  return *this;
}

int Num::cmp(const Num& a, const Num& b) {
  if (a.exact() && b.exact()) return std::get<Rat>(a.v_).compare(std::get<Rat>(b.v_));
  return a.to_real().compare(b.to_real());
}

Num Num::abs() const { return sign() < 0 ? -*this : *this; }

std::string Num::str() const {
  if (exact()) {
    const Rat& r = std::get<Rat>(v_);
    if (boost::multiprecision::denominator(r) == 1)
      return boost::multiprecision::numerator(r).str();
    return r.str();
  }
  return std::get<Real>(v_).str();
}

Num pow_int(const Num& base, long e) {
  if (e == 0) return Num(1);
  if (base.is_zero()) {
    if (e < 0) fail(Errc::Internal, "zero to a negative power");
    return Num(0);
  }
  if (base.exact()) {
    const Rat& r = base.rat();
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Int n = boost::multiprecision::pow(boost::multiprecision::numerator(r),
                                       static_cast<unsigned>(k));
    Int d = boost::multiprecision::pow(boost::multiprecision::denominator(r),
                                       static_cast<unsigned>(k));
    Rat out(n, d);
    if (e < 0) out = Rat(1) / out;
    return Num(out);
  }
  return Num(Real(boost::multiprecision::pow(base.to_real(), static_cast<int>(e))));
}

std::string decimal_string(const Num& x, unsigned digits) {
  return x.to_real().str(digits);
}

Cplx& Cplx::operator*=(const Cplx& o) {
  Num r = re * o.re - im * o.im;
  Num i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Cplx Cplx::times_i_pow(int k) const {
  int m = ((k % 4) + 4) % 4;
  switch (m) {
    case 0: return *this;
    case 1: return {-im, re};
    case 2: return {-re, -im};
    default: return {im, -re};
  }
}

Real abs_value(const Cplx& z) {
  return boost::multiprecision::sqrt(z.abs2().to_real());
}

}  // namespace bnet
