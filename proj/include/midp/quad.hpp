#pragma once

// Thin wrapper around __float128 (libquadmath) plus a minimal complex type.
// All constant-precision work in the project routes through this header so
// the working precision (~33.6 decimal digits) is in one place.

#include <quadmath.h>

#include <cstdint>
#include <string>

namespace midp {

using qreal = __float128;

inline qreal q_sqrt(qreal x) { return sqrtq(x); }
inline qreal q_exp(qreal x) { return expq(x); }
inline qreal q_expm1(qreal x) { return expm1q(x); }
inline qreal q_log(qreal x) { return logq(x); }
inline qreal q_log1p(qreal x) { return log1pq(x); }
inline qreal q_pow(qreal x, qreal y) { return powq(x, y); }
inline qreal q_floor(qreal x) { return floorq(x); }
inline qreal q_ceil(qreal x) { return ceilq(x); }
inline qreal q_abs(qreal x) { return fabsq(x); }
inline qreal q_sin(qreal x) { return sinq(x); }
inline qreal q_cos(qreal x) { return cosq(x); }
inline qreal q_atan2(qreal y, qreal x) { return atan2q(y, x); }
inline qreal q_lgamma(qreal x) { return lgammaq(x); }
inline qreal q_round(qreal x) { return roundq(x); }

inline double to_double(qreal x) { return static_cast<double>(x); }

inline qreal q_from_str(const char* s) { return strtoflt128(s, nullptr); }

// %.*Qe rendering, mainly for diagnostics and high-precision dumps.
inline std::string q_to_string(qreal x, int digits = 30) {
  char buf[128];
  quadmath_snprintf(buf, sizeof buf, "%.*Qe", digits, x);
  return buf;
}

inline qreal q_pi() {
  static const qreal v = q_from_str("3.14159265358979323846264338327950288");
  return v;
}
inline qreal q_euler_gamma() {
  static const qreal v = q_from_str("0.577215664901532860606512090082402431");
  return v;
}
inline qreal q_sqrt5() {
  static const qreal v = q_from_str("2.23606797749978969640917366873127624");
  return v;
}
// golden ratio (1+sqrt 5)/2
inline qreal q_phi() {
  static const qreal v = q_from_str("1.61803398874989484820458683436563812");
  return v;
}
inline qreal q_log_2pi() {
  static const qreal v = q_from_str("1.83787706640934548356065947281123527");
  return v;
}

// ---------------------------------------------------------------------------
// Minimal complex arithmetic over qreal.  std::complex<__float128> is not
// reliable across standard libraries, so we carry our own.
// ---------------------------------------------------------------------------

struct cplx {
  qreal re = 0;
  qreal im = 0;

  cplx() = default;
  cplx(qreal r) : re(r) {}
  cplx(qreal r, qreal i) : re(r), im(i) {}
  cplx(double r) : re(r) {}
  cplx(int r) : re(r) {}

  cplx& operator+=(const cplx& o) { re += o.re; im += o.im; return *this; }
  cplx& operator-=(const cplx& o) { re -= o.re; im -= o.im; return *this; }
  cplx& operator*=(const cplx& o) {
    const qreal r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  cplx& operator/=(const cplx& o);
};

inline bool operator==(const cplx& a, const cplx& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const cplx& a, const cplx& b) { return !(a == b); }

inline cplx operator+(cplx a, const cplx& b) { return a += b; }
inline cplx operator-(cplx a, const cplx& b) { return a -= b; }
inline cplx operator*(cplx a, const cplx& b) { return a *= b; }
inline cplx operator-(const cplx& a) { return {-a.re, -a.im}; }

inline qreal norm(const cplx& a) { return a.re * a.re + a.im * a.im; }
inline cplx conj(const cplx& a) { return {a.re, -a.im}; }
inline qreal abs(const cplx& a) { return hypotq(a.re, a.im); }
inline qreal arg(const cplx& a) { return q_atan2(a.im, a.re); }

inline cplx& cplx::operator/=(const cplx& o) {
  // scaled division avoids overflow for the magnitudes we meet
  const qreal d = norm(o);
  const qreal r = (re * o.re + im * o.im) / d;
  im = (im * o.re - re * o.im) / d;
  re = r;
  return *this;
}
inline cplx operator/(cplx a, const cplx& b) { return a /= b; }

inline cplx exp(const cplx& z) {
  const qreal e = q_exp(z.re);
  return {e * q_cos(z.im), e * q_sin(z.im)};
}
// principal branch
inline cplx log(const cplx& z) { return {q_log(abs(z)), arg(z)}; }
inline cplx sqrt(const cplx& z) {
  const qreal m = abs(z);
  if (m == 0) return {0, 0};
  const qreal t = arg(z) / 2;
  const qreal s = q_sqrt(m);
  return {s * q_cos(t), s * q_sin(t)};
}
inline cplx pow_int(cplx z, long n) {
  bool inv = n < 0;
  unsigned long k = inv ? -static_cast<unsigned long>(n) : n;
  cplx r{1, 0};
  while (k) {
    if (k & 1) r *= z;
    z *= z;
    k >>= 1;
  }
  return inv ? cplx{1, 0} / r : r;
}
inline cplx unit_circle(qreal theta) { return {q_cos(theta), q_sin(theta)}; }

}  // namespace midp
