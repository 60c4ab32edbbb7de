#ifndef TAUSPEC_DD_HPP
#define TAUSPEC_DD_HPP

// Double-double arithmetic (Dekker/Bailey style), enough of it to run the
// instanton-sum kernel and the series log at ~32 significant digits.  Used
// only inside the NS eps2-extrapolation, where representing Z before taking
// its log cancels k*log10(F1/eps2) digits at series order k.

#include <cmath>

namespace tauspec::dd {

struct Dd {
  double hi = 0.0, lo = 0.0;
  Dd() = default;
  Dd(double h) : hi(h), lo(0.0) {}
  Dd(double h, double l) : hi(h), lo(l) {}
  explicit operator double() const { return hi; }
};

inline Dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline Dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline Dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline Dd operator+(Dd a, Dd b) {
  Dd s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline Dd operator-(Dd a) { return {-a.hi, -a.lo}; }
inline Dd operator-(Dd a, Dd b) { return a + (-b); }

inline Dd operator*(Dd a, Dd b) {
  Dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline Dd operator/(Dd a, Dd b) {
  double q1 = a.hi / b.hi;
  Dd r = a - b * Dd(q1);
  double q2 = r.hi / b.hi;
  r = r - b * Dd(q2);
  double q3 = r.hi / b.hi;
  Dd q = quick_two_sum(q1, q2);
  return q + Dd(q3);
}

inline Dd& operator+=(Dd& a, Dd b) { a = a + b; return a; }
inline Dd& operator-=(Dd& a, Dd b) { a = a - b; return a; }
inline Dd& operator*=(Dd& a, Dd b) { a = a * b; return a; }

// Complex double-double with the minimal surface the templates need.
struct DdCx {
  using value_type = Dd;
  Dd re, im;
  DdCx() : re(0.0), im(0.0) {}
  DdCx(double r) : re(r), im(0.0) {}
  DdCx(Dd r) : re(r), im(0.0) {}
  DdCx(Dd r, Dd i) : re(r), im(i) {}
  Dd real() const { return re; }
  Dd imag() const { return im; }
};

inline DdCx operator+(DdCx a, DdCx b) { return {a.re + b.re, a.im + b.im}; }
inline DdCx operator-(DdCx a, DdCx b) { return {a.re - b.re, a.im - b.im}; }
inline DdCx operator-(DdCx a) { return {-a.re, -a.im}; }
inline DdCx operator*(DdCx a, DdCx b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline DdCx operator*(DdCx a, Dd b) { return {a.re * b, a.im * b}; }
inline DdCx operator/(DdCx a, DdCx b) {
  Dd n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
inline DdCx& operator+=(DdCx& a, DdCx b) { a = a + b; return a; }
inline DdCx& operator*=(DdCx& a, DdCx b) { a = a * b; return a; }
inline bool operator==(DdCx a, DdCx b) {
  return a.re.hi == b.re.hi && a.re.lo == b.re.lo && a.im.hi == b.im.hi &&
         a.im.lo == b.im.lo;
}

}  // namespace tauspec::dd

namespace std {
inline double abs(tauspec::dd::Dd a) { return std::fabs(a.hi); }
inline double abs(tauspec::dd::DdCx a) {
  return std::hypot(a.re.hi, a.im.hi);
}
}  // namespace std

#endif
