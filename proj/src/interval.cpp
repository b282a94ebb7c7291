#include "momtech/interval.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "momtech/error.hpp"

namespace momtech {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this magnitude FMA residuals may underflow and stop being exact.
constexpr double kTiny = 0x1p-960;

double widen_down(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -kInf);
  return x;
}

double widen_up(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, kInf);
  return x;
}

// Encloses the image of a libm result y ~ f(x).
Interval libm(double y) {
  if (std::isnan(y)) fail(ErrorKind::Domain, "elementary function returned NaN");
  return Interval(widen_down(y, Interval::kLibmUlps), widen_up(y, Interval::kLibmUlps));
}

}  // namespace

namespace rounding {

double next_up(double x) { return std::nextafter(x, kInf); }
double next_down(double x) { return std::nextafter(x, -kInf); }

// TwoSum gives the exact error of s = fl(a+b) unless s overflowed.
static int sum_error_sign(double a, double b, double s) {
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return (err > 0) - (err < 0);
}

double add_down(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return s == kInf && std::isfinite(a) && std::isfinite(b) ? DBL_MAX : s;
  return sum_error_sign(a, b, s) < 0 ? next_down(s) : s;
}

double add_up(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return s == -kInf && std::isfinite(a) && std::isfinite(b) ? -DBL_MAX : s;
  return sum_error_sign(a, b, s) > 0 ? next_up(s) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

static int product_error_sign(double a, double b, double p) {
  if (std::abs(p) < kTiny) return 2;  // unknown
  double err = std::fma(a, b, -p);
  return (err > 0) - (err < 0);
}

double mul_down(double a, double b) {
  double p = a * b;
  if (std::isnan(p)) return p;
  if (std::isinf(p)) return (p > 0 && std::isfinite(a) && std::isfinite(b)) ? DBL_MAX : p;
  if (a == 0.0 || b == 0.0) return 0.0;
  int sign = product_error_sign(a, b, p);
  return (sign < 0 || sign == 2) ? next_down(p) : p;
}

double mul_up(double a, double b) {
  double p = a * b;
  if (std::isnan(p)) return p;
  if (std::isinf(p)) return (p < 0 && std::isfinite(a) && std::isfinite(b)) ? -DBL_MAX : p;
  if (a == 0.0 || b == 0.0) return 0.0;
  int sign = product_error_sign(a, b, p);
  return (sign > 0 || sign == 2) ? next_up(p) : p;
}

// Residual r = a - q*b is exact; the true quotient is q + r/b.
static int quotient_error_sign(double a, double b, double q) {
  if (std::abs(q) < kTiny || std::abs(a) < kTiny) return 2;
  double r = std::fma(-q, b, a);
  int rs = (r > 0) - (r < 0);
  return b > 0 ? rs : -rs;
}

double div_down(double a, double b) {
  double q = a / b;
  if (!std::isfinite(q)) return (q == kInf && std::isfinite(a) && b != 0.0) ? DBL_MAX : q;
  if (a == 0.0) return 0.0;
  int sign = quotient_error_sign(a, b, q);
  return (sign < 0 || sign == 2) ? next_down(q) : q;
}

double div_up(double a, double b) {
  double q = a / b;
  if (!std::isfinite(q)) return (q == -kInf && std::isfinite(a) && b != 0.0) ? -DBL_MAX : q;
  if (a == 0.0) return 0.0;
  int sign = quotient_error_sign(a, b, q);
  return (sign > 0 || sign == 2) ? next_up(q) : q;
}

static int sqrt_error_sign(double a, double s) {
  if (a < kTiny) return 2;
  double r = std::fma(-s, s, a);
  return (r > 0) - (r < 0);
}

double sqrt_down(double a) {
  if (a == 0.0) return 0.0;
  double s = std::sqrt(a);
  if (std::isinf(s)) return s;
  int sign = sqrt_error_sign(a, s);
  return (sign < 0 || sign == 2) ? next_down(s) : s;
}

double sqrt_up(double a) {
  if (a == 0.0) return 0.0;
  double s = std::sqrt(a);
  if (std::isinf(s)) return s;
  int sign = sqrt_error_sign(a, s);
  return (sign > 0 || sign == 2) ? next_up(s) : s;
}

}  // namespace rounding

using namespace rounding;

Interval::Interval(double x) : lo_(x), hi_(x) {
  if (std::isnan(x)) fail(ErrorKind::Domain, "interval endpoint is NaN");
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi)) fail(ErrorKind::Domain, "interval endpoint is NaN");
  if (lo > hi) fail(ErrorKind::Internal, "interval with lo > hi");
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
}

Interval Interval::around(double x) { return {next_down(x), next_up(x)}; }

double Interval::mid() const {
  if (lo_ == -hi_) return 0.0;
  double m = lo_ / 2 + hi_ / 2;
  return std::clamp(m, lo_, hi_);
}

double Interval::rad() const {
  double m = mid();
  return std::max(sub_up(hi_, m), sub_up(m, lo_));
}

double Interval::width() const { return sub_up(hi_, lo_); }

Interval Interval::inflate(double r) const {
  return {sub_down(lo_, std::abs(r)), add_up(hi_, std::abs(r))};
}

Interval& Interval::operator+=(const Interval& o) { return *this = *this + o; }
Interval& Interval::operator-=(const Interval& o) { return *this = *this - o; }
Interval& Interval::operator*=(const Interval& o) { return *this = *this * o; }
Interval& Interval::operator/=(const Interval& o) { return *this = *this / o; }

Interval operator+(const Interval& a, const Interval& b) {
  return {add_down(a.lo_, b.lo_), add_up(a.hi_, b.hi_)};
}

Interval operator-(const Interval& a, const Interval& b) {
  return {sub_down(a.lo_, b.hi_), sub_up(a.hi_, b.lo_)};
}

Interval operator*(const Interval& a, const Interval& b) {
  const double ends[4][2] = {{a.lo_, b.lo_}, {a.lo_, b.hi_}, {a.hi_, b.lo_}, {a.hi_, b.hi_}};
  double lo = kInf;
  double hi = -kInf;
  for (const auto& e : ends) {
    lo = std::min(lo, mul_down(e[0], e[1]));
    hi = std::max(hi, mul_up(e[0], e[1]));
  }
  return {lo, hi};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) fail(ErrorKind::Domain, "division by an interval containing zero: " + to_string(b));
  const double ends[4][2] = {{a.lo_, b.lo_}, {a.lo_, b.hi_}, {a.hi_, b.lo_}, {a.hi_, b.hi_}};
  double lo = kInf;
  double hi = -kInf;
  for (const auto& e : ends) {
    lo = std::min(lo, div_down(e[0], e[1]));
    hi = std::max(hi, div_up(e[0], e[1]));
  }
  return {lo, hi};
}

Interval intersect(const Interval& a, const Interval& b) {
  if (!a.overlaps(b))
    fail(ErrorKind::Internal, "disjoint enclosures " + to_string(a) + " and " + to_string(b));
  return {std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

Interval abs(const Interval& x) {
  if (x.lo() >= 0) return x;
  if (x.hi() <= 0) return -x;
  return {0.0, std::max(-x.lo(), x.hi())};
}

Interval sqr(const Interval& x) {
  Interval a = abs(x);
  return {mul_down(a.lo(), a.lo()), mul_up(a.hi(), a.hi())};
}

Interval sqrt(const Interval& x) {
  if (x.lo() < 0) fail(ErrorKind::Domain, "sqrt of an interval reaching below zero: " + to_string(x));
  return {sqrt_down(x.lo()), sqrt_up(x.hi())};
}

Interval cbrt(const Interval& x) {
  double lo = x.lo() == 0.0 ? 0.0 : libm(std::cbrt(x.lo())).lo();
  double hi = x.hi() == 0.0 ? 0.0 : libm(std::cbrt(x.hi())).hi();
  return {lo, hi};
}

Interval exp(const Interval& x) {
  double lo = x.lo() == 0.0 ? 1.0 : std::max(0.0, libm(std::exp(x.lo())).lo());
  double hi = x.hi() == 0.0 ? 1.0 : libm(std::exp(x.hi())).hi();
  return {lo, hi};
}

Interval log(const Interval& x) {
  if (x.lo() <= 0) fail(ErrorKind::Domain, "log of a non-positive interval: " + to_string(x));
  double lo = x.lo() == 1.0 ? 0.0 : libm(std::log(x.lo())).lo();
  double hi = x.hi() == 1.0 ? 0.0 : libm(std::log(x.hi())).hi();
  return {lo, hi};
}

namespace {

// Hull of f over x, where f is 2pi-periodic with maximum +1 at peak + 2k pi
// and minimum -1 at peak + (2k+1) pi.
template <typename F>
Interval periodic_unit(const Interval& x, F f, const Interval& peak) {
  const Interval two_pi = pi() * Interval(2.0);
  if (!std::isfinite(x.lo()) || !std::isfinite(x.hi()) || x.width() >= two_pi.lo())
    return {-1.0, 1.0};
  Interval out = Interval::hull(libm(f(x.lo())), libm(f(x.hi())));
  const Interval p = pi();
  double k_first = std::floor((x.lo() - peak.hi()) / p.hi()) - 1;
  double k_last = std::ceil((x.hi() - peak.lo()) / p.lo()) + 1;
  for (double k = k_first; k <= k_last; k += 1.0) {
    Interval critical = peak + Interval(k) * p;
    if (!critical.overlaps(x)) continue;
    bool even = std::fmod(std::abs(k), 2.0) == 0.0;
    out = Interval::hull(out, Interval(even ? 1.0 : -1.0));
  }
  return {std::max(out.lo(), -1.0), std::min(out.hi(), 1.0)};
}

}  // namespace

Interval cos(const Interval& x) {
  if (x.is_point() && x.lo() == 0.0) return Interval(1.0);
  return periodic_unit(x, [](double t) { return std::cos(t); }, Interval(0.0));
}

Interval sin(const Interval& x) {
  if (x.is_point() && x.lo() == 0.0) return Interval(0.0);
  return periodic_unit(x, [](double t) { return std::sin(t); }, pi() / Interval(2.0));
}

Interval acos(const Interval& x) {
  if (x.lo() < -1.0 || x.hi() > 1.0) fail(ErrorKind::Domain, "acos outside [-1,1]: " + to_string(x));
  const Interval p = pi();
  double lo = x.hi() == 1.0 ? 0.0 : std::max(0.0, libm(std::acos(x.hi())).lo());
  double hi = x.lo() == -1.0 ? p.hi() : std::min(p.hi(), libm(std::acos(x.lo())).hi());
  return {lo, hi};
}

Interval pow_two_thirds(const Interval& x) {
  if (x.lo() < 0) fail(ErrorKind::Domain, "x^(2/3) of an interval reaching below zero: " + to_string(x));
  return sqr(cbrt(x));
}

Interval pow_three_halves(const Interval& x) {
  if (x.lo() < 0) fail(ErrorKind::Domain, "x^(3/2) of an interval reaching below zero: " + to_string(x));
  return x * sqrt(x);
}

Interval max(const Interval& a, const Interval& b) {
  return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

Interval min(const Interval& a, const Interval& b) {
  return {std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

Interval pi() {
  // The nearest double to pi lies just below it.
  static const Interval value(std::numbers::pi, next_up(std::numbers::pi));
  return value;
}

std::string to_string(const Interval& x) {
  char buf[96];
  // Adding +0.0 prints a negative zero as 0.
  std::snprintf(buf, sizeof buf, "[%.17g,%.17g]", x.lo() + 0.0, x.hi() + 0.0);
  return buf;
}

std::ostream& operator<<(std::ostream& os, const Interval& x) { return os << to_string(x); }

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Uncertifiable: return "uncertifiable";
    case ErrorKind::AmbiguousSpectrum: return "ambiguous-spectrum";
    case ErrorKind::Internal: return "internal-inconsistency";
  }
  return "unknown";
}

}  // namespace momtech
