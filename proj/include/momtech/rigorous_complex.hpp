#pragma once

#include <iosfwd>
#include <string>

#include "momtech/interval.hpp"

namespace momtech {

/// Rectangle re x im in the complex plane containing the true value.
struct RigorousComplex {
  Interval re;
  Interval im;

  RigorousComplex() = default;
  RigorousComplex(Interval r, Interval i = Interval(0.0)) : re(r), im(i) {}  // NOLINT

  /// exp(i theta), enclosed.
  static RigorousComplex unit(const Interval& theta);

  RigorousComplex conj() const { return {re, -im}; }
  RigorousComplex inflate(double r) const { return {re.inflate(r), im.inflate(r)}; }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  bool overlaps(const RigorousComplex& o) const { return re.overlaps(o.re) && im.overlaps(o.im); }
  bool contains(const RigorousComplex& o) const { return re.contains(o.re) && im.contains(o.im); }

  RigorousComplex operator-() const { return {-re, -im}; }
  friend RigorousComplex operator+(const RigorousComplex& a, const RigorousComplex& b);
  friend RigorousComplex operator-(const RigorousComplex& a, const RigorousComplex& b);
  friend RigorousComplex operator*(const RigorousComplex& a, const RigorousComplex& b);
  friend RigorousComplex operator/(const RigorousComplex& a, const RigorousComplex& b);

  friend bool operator==(const RigorousComplex&, const RigorousComplex&) = default;
};

/// |z|^2
Interval norm(const RigorousComplex& z);
/// |z|
Interval abs(const RigorousComplex& z);

/// Argument in (-pi, pi]. Rectangles containing 0 or straddling the negative
/// real axis are rejected as Degenerate.
Interval arg(const RigorousComplex& z);

std::string to_string(const RigorousComplex& z);
std::ostream& operator<<(std::ostream& os, const RigorousComplex& z);

}  // namespace momtech
