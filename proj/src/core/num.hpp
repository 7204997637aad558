#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>
#include <variant>

namespace bnet {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
// Runtime-precision MPFR float, expression templates off so values behave
// like plain scalars inside std::variant and containers.
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

// Error taxonomy shared by the whole library. Codes double as process exit
// codes: 2 parse, 3 validation, 4 resource, 5 inconclusive, 1 anything else.
enum class Errc : int {
  Internal = 1,
  Parse = 2,
  Validation = 3,
  Resource = 4,
  Inconclusive = 5,
};

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) {
  throw Error(c, msg);
}

// Requested decimal precision. Floats carry an extra guard band so that
// results quoted at `precision()` digits are trustworthy.
void set_precision(unsigned digits10);
unsigned precision();
unsigned working_digits();
// Comparison tolerance tied to the requested precision: 10^-(precision-10).
Real default_tolerance();
Real pow10(long e);

// Scalar that is either an exact rational or a high-precision float.
// Mixed arithmetic promotes to float; purely rational pipelines never
// leave the exact branch.
class Num {
 public:
  Num() : v_(Rat(0)) {}
  Num(int n) : v_(Rat(n)) {}
  Num(long n) : v_(Rat(n)) {}
  Num(long long n) : v_(Rat(n)) {}
  Num(const Int& n) : v_(Rat(n)) {}
  Num(const Rat& r) : v_(r) {}
  Num(const Real& r) : v_(r) {}

  bool exact() const { return std::holds_alternative<Rat>(v_); }
  const Rat& rat() const {
    if (!exact()) fail(Errc::Internal, "exact value required");
    return std::get<Rat>(v_);
  }
  Real to_real() const;

  bool is_zero() const;
  bool is_integer() const;
  Int as_integer() const;  // requires exact integer
  int sign() const;

  Num operator-() const;
  Num& operator+=(const Num& o);
  Num& operator-=(const Num& o);
  Num& operator*=(const Num& o);
  Num& operator/=(const Num& o);

  friend Num operator+(Num a, const Num& b) { return a += b; }
  friend Num operator-(Num a, const Num& b) { return a -= b; }
  friend Num operator*(Num a, const Num& b) { return a *= b; }
  friend Num operator/(Num a, const Num& b) { return a /= b; }

  friend bool operator==(const Num& a, const Num& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Num& a, const Num& b) { return cmp(a, b) != 0; }
  friend bool operator<(const Num& a, const Num& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Num& a, const Num& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Num& a, const Num& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Num& a, const Num& b) { return cmp(a, b) >= 0; }

  Num abs() const;
  // Display form: exact values as p or p/q, floats at working digits.
  std::string str() const;

 private:
  static int cmp(const Num& a, const Num& b);
  std::variant<Rat, Real> v_;
};

// Integer power, exact on rationals, defined for negative exponents on
// nonzero bases.
Num pow_int(const Num& base, long e);
// Decimal rendering at `digits` significant digits (both branches).
std::string decimal_string(const Num& x, unsigned digits);
Real to_real(const Rat& r);

struct Cplx {
  Num re, im;
  Cplx() = default;
  Cplx(Num r) : re(std::move(r)) {}
  Cplx(Num r, Num i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  Cplx conj() const { return {re, -im}; }
  Num abs2() const { return re * re + im * im; }
  // Multiplication by i^k, k mod 4; stays exact on exact input.
  Cplx times_i_pow(int k) const;

  Cplx operator-() const { return {-re, -im}; }
  Cplx& operator+=(const Cplx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cplx& operator-=(const Cplx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Cplx& operator*=(const Cplx& o);
  friend Cplx operator+(Cplx a, const Cplx& b) { return a += b; }
  friend Cplx operator-(Cplx a, const Cplx& b) { return a -= b; }
  friend Cplx operator*(Cplx a, const Cplx& b) { return a *= b; }
  friend bool operator==(const Cplx& a, const Cplx& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Cplx& a, const Cplx& b) { return !(a == b); }
};

// |z| as a float (sqrt leaves the rational field in general).
Real abs_value(const Cplx& z);

}  // namespace bnet
