#include "momtech/lobachevsky.hpp"

#include <cmath>
#include <vector>

#include "momtech/error.hpp"

namespace momtech {

namespace {

constexpr int kMaxTerms = 400;
constexpr double kTailTarget = 1e-19;

Interval zeta_even(int k) {
  const Interval p2 = sqr(pi());
  switch (k) {
    case 1: return p2 / Interval(6.0);
    case 2: return sqr(p2) / Interval(90.0);
    case 3: return sqr(p2) * p2 / Interval(945.0);
    default: break;
  }
  // sum_{j<=J} j^(-2k) + [0, J^(1-2k)/(2k-1)], J grown until the tail is negligible.
  Interval sum(0.0);
  for (int j = 1;; ++j) {
    Interval inv = Interval(1.0) / Interval(static_cast<double>(j));
    Interval term(1.0);
    for (int i = 0; i < 2 * k; ++i) term = term * inv;
    sum = sum + term;
    Interval tail_bound = term * Interval(static_cast<double>(j)) / Interval(2.0 * k - 1.0);
    if (tail_bound.hi() < 1e-22) return sum + Interval(0.0, tail_bound.hi());
  }
}

const std::vector<Interval>& series_coefficients() {
  // c_k = zeta(2k) / (k (2k+1)), k = 1..kMaxTerms.
  static const std::vector<Interval> coefficients = [] {
    std::vector<Interval> c;
    c.reserve(kMaxTerms);
    for (int k = 1; k <= kMaxTerms; ++k) {
      c.push_back(zeta_even(k) / Interval(static_cast<double>(k) * (2.0 * k + 1.0)));
    }
    return c;
  }();
  return coefficients;
}

// x - x log(2x) + O(x^3) is increasing on [0, 1/(2e)); the cubic remainder is
// bounded by zeta(2)/3 * x^3 / pi^2 < 0.06 x^3.
Interval near_zero_bound(double x) {
  Interval b = Interval(x) - Interval(x) * log(Interval(2.0 * x)) + Interval(0.06) * Interval(x) * Interval(x) * Interval(x);
  return {-b.hi(), b.hi()};
}

Interval at_point(double x) {
  if (!std::isfinite(x)) fail(ErrorKind::Domain, "Lobachevsky function of a non-finite angle");
  if (x == 0.0) return Interval(0.0);
  const Interval p = pi();
  double k = std::nearbyint(x / p.mid());
  Interval t = Interval(x) - Interval(k) * p;
  if (t.width() >= 0.5) return Interval(-lobachevsky_max().hi(), lobachevsky_max().hi());
  if (t.lo() > 0) return detail::lobachevsky_series(t);
  if (t.hi() < 0) return -detail::lobachevsky_series(-t);
  // x is within rounding of a multiple of pi.
  double r = std::max(-t.lo(), t.hi());
  if (r > 0.1) fail(ErrorKind::Internal, "Lobachevsky range reduction lost precision");
  return near_zero_bound(r);
}

}  // namespace

namespace detail {

Interval lobachevsky_series(const Interval& t) {
  if (t.lo() <= 0 || t.hi() > 2.4)
    fail(ErrorKind::Internal, "Lobachevsky series argument outside (0, 2.4]: " + to_string(t));
  const auto& c = series_coefficients();
  const Interval r = sqr(t / pi());
  const double ratio = r.hi();  // < (2.4/pi)^2 < 0.59

  Interval power(1.0);
  Interval sum(0.0);
  for (int k = 1; k <= kMaxTerms; ++k) {
    power = power * r;
    sum = sum + c[k - 1] * power;
    // Remaining terms: sum_{j>k} zeta(2j) r^j / (j(2j+1)) <= zeta(2) r^(k+1) / ((k+1)(2k+3)(1-r)).
    double tail = c[0].hi() * 3.0 * std::pow(ratio, k + 1) / ((k + 1.0) * (2.0 * k + 3.0) * (1.0 - ratio));
    if (tail < kTailTarget || k == kMaxTerms) {
      Interval tail_enclosure(0.0, tail * 1.01);
      Interval main = t - t * log(Interval(2.0) * t);
      return main + t * (sum + tail_enclosure);
    }
  }
  fail(ErrorKind::Internal, "unreachable");
}

}  // namespace detail

Interval lobachevsky_max() {
  static const Interval value = detail::lobachevsky_series(pi() / Interval(6.0));
  return value;
}

Interval lobachevsky(const Interval& theta) {
  if (!std::isfinite(theta.lo()) || !std::isfinite(theta.hi()))
    fail(ErrorKind::Domain, "Lobachevsky function of a non-finite angle");
  const Interval top = lobachevsky_max();
  const Interval p = pi();
  if (theta.width() >= p.lo()) return {-top.hi(), top.hi()};

  Interval out = at_point(theta.lo());
  if (!theta.is_point()) out = Interval::hull(out, at_point(theta.hi()));
  if (theta.is_point()) return out;

  const Interval sixth = p / Interval(6.0);
  double k_first = std::floor(theta.lo() / p.hi()) - 1;
  double k_last = std::ceil(theta.hi() / p.lo()) + 1;
  for (double k = k_first; k <= k_last; k += 1.0) {
    Interval shift = Interval(k) * p;
    if ((shift + sixth).overlaps(theta)) out = Interval::hull(out, top);
    if ((shift - sixth).overlaps(theta)) out = Interval::hull(out, -top);
  }
  return out;
}

}  // namespace momtech
