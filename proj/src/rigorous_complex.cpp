#include "momtech/rigorous_complex.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "momtech/error.hpp"

namespace momtech {

RigorousComplex RigorousComplex::unit(const Interval& theta) { return {cos(theta), sin(theta)}; }

RigorousComplex operator+(const RigorousComplex& a, const RigorousComplex& b) {
  return {a.re + b.re, a.im + b.im};
}

RigorousComplex operator-(const RigorousComplex& a, const RigorousComplex& b) {
  return {a.re - b.re, a.im - b.im};
}

RigorousComplex operator*(const RigorousComplex& a, const RigorousComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

RigorousComplex operator/(const RigorousComplex& a, const RigorousComplex& b) {
  Interval d = norm(b);
  if (d.contains_zero()) fail(ErrorKind::Domain, "complex division by a rectangle containing zero: " + to_string(b));
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

Interval norm(const RigorousComplex& z) { return sqr(z.re) + sqr(z.im); }

Interval abs(const RigorousComplex& z) { return sqrt(norm(z)); }

Interval arg(const RigorousComplex& z) {
  if (z.contains_zero()) fail(ErrorKind::Degenerate, "argument of a rectangle containing 0: " + to_string(z));
  if (z.re.lo() < 0 && z.im.contains_zero())
    fail(ErrorKind::Degenerate, "rectangle straddles the branch cut of arg: " + to_string(z));

  // Off the cut and away from 0, arg over a rectangle is extremal at corners.
  double lo = INFINITY;
  double hi = -INFINITY;
  for (double x : {z.re.lo(), z.re.hi()}) {
    for (double y : {z.im.lo(), z.im.hi()}) {
      double a = std::atan2(y, x);
      double down = a;
      double up = a;
      for (int i = 0; i < Interval::kLibmUlps; ++i) {
        down = std::nextafter(down, -INFINITY);
        up = std::nextafter(up, INFINITY);
      }
      // atan2(+-0, x>0) is exact.
      if (y == 0.0 && x > 0) down = up = 0.0;
      lo = std::min(lo, down);
      hi = std::max(hi, up);
    }
  }
  const Interval p = pi();
  return {std::max(lo, -p.hi()), std::min(hi, p.hi())};
}

std::string to_string(const RigorousComplex& z) { return "(" + to_string(z.re) + " + i" + to_string(z.im) + ")"; }

std::ostream& operator<<(std::ostream& os, const RigorousComplex& z) { return os << to_string(z); }

}  // namespace momtech
