#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "momtech/error.hpp"
#include "momtech/interval.hpp"
#include "momtech/rigorous_complex.hpp"
#include "oracle.hpp"

using momtech::Error;
using momtech::ErrorKind;
using momtech::Interval;
using oracle::Real;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected momtech::Error");
  return ErrorKind::Internal;
}

double ulp(double x) { return std::nextafter(std::abs(x), INFINITY) - std::abs(x); }

}  // namespace

TEST_CASE("exact integer addition stays tight") {
  Interval s = Interval(1.0) + Interval(2.0);
  CHECK(s.contains(3.0));
  CHECK(s.width() <= 2 * ulp(3.0));
}

TEST_CASE("sqrt of a perfect square is exact") {
  Interval r = sqrt(Interval(4.0));
  CHECK(r.contains(2.0));
  CHECK(r.is_point());
}

TEST_CASE("exp(log(5)) round trip") {
  Interval r = exp(log(Interval(5.0)));
  CHECK(oracle::encloses(r, Real(5)));
  CHECK(r.width() <= 1e-12);
}

TEST_CASE("directed rounding detects inexact sums") {
  Interval s = Interval(0.1) + Interval(0.2);
  Real exact = Real(0.1) + Real(0.2);
  CHECK(oracle::encloses(s, exact));
  CHECK(!s.is_point());
  CHECK(s.width() <= ulp(0.3));
}

TEST_CASE("domain violations are explicit errors") {
  CHECK(kind_of([] { (void)(Interval(1.0) / Interval(-1.0, 1.0)); }) == ErrorKind::Domain);
  CHECK(kind_of([] { (void)log(Interval(0.0, 1.0)); }) == ErrorKind::Domain);
  CHECK(kind_of([] { (void)log(Interval(-2.0, -1.0)); }) == ErrorKind::Domain);
  CHECK(kind_of([] { (void)sqrt(Interval(-1e-300, 1.0)); }) == ErrorKind::Domain);
  CHECK(sqrt(Interval(0.0, 4.0)).lo() == 0.0);
  CHECK(kind_of([] { (void)Interval(2.0, 1.0); }) == ErrorKind::Internal);
  CHECK(kind_of([] { (void)acos(Interval(0.5, 1.5)); }) == ErrorKind::Domain);
}

TEST_CASE("pi enclosure") {
  Interval p = momtech::pi();
  CHECK(oracle::encloses(p, oracle::pi()));
  CHECK(p.width() <= ulp(3.0));
}

TEST_CASE("sin and cos pick up interior extrema") {
  Interval c = cos(Interval(-0.5, 0.5));
  CHECK(c.hi() == 1.0);
  Interval s = sin(Interval(1.0, 2.0));
  CHECK(s.hi() == 1.0);
  Interval s2 = sin(Interval(4.0, 5.0));
  CHECK(s2.lo() == -1.0);
  CHECK(cos(Interval(0.0, 7.0)) == Interval(-1.0, 1.0));
}

TEST_CASE("containment against a 50-digit oracle over 1e5 random trials") {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> mag(-30.0, 30.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_double = [&](bool positive) {
    double x = std::exp(mag(rng) * 0.25) * (unit(rng) + 0.01);
    if (!positive && unit(rng) < 0.5) x = -x;
    return x;
  };
  // A random interval and a random point inside it.
  auto random_box = [&](bool positive) {
    double a = random_double(positive);
    double w = unit(rng) < 0.3 ? 0.0 : std::abs(a) * std::pow(10.0, -1 - 15 * unit(rng));
    Interval box(a, a + w);
    double t = unit(rng);
    Real inside = Real(box.lo()) + (Real(box.hi()) - Real(box.lo())) * Real(t);
    return std::pair{box, inside};
  };

  int failures = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    auto [a, ra] = random_box(false);
    auto [b, rb] = random_box(false);
    auto [p, rp] = random_box(true);
    using namespace boost::multiprecision;
    std::vector<std::pair<Interval, Real>> checks = {
        {a + b, ra + rb},
        {a - b, ra - rb},
        {a * b, ra * rb},
        {a / b, ra / rb},
        {sqr(a), ra * ra},
        {sqrt(p), sqrt(rp)},
        {cbrt(p), cbrt(rp)},
        {pow_two_thirds(p), pow(rp, Real(2) / 3)},
        {pow_three_halves(p), pow(rp, Real(3) / 2)},
        {log(p), log(rp)},
        {abs(a), abs(ra)},
    };
    if (a.hi() < 700) checks.emplace_back(exp(a), exp(ra));
    if (std::abs(a.lo()) < 1e6) {
      checks.emplace_back(sin(a), sin(ra));
      checks.emplace_back(cos(a), cos(ra));
    }
    double c = std::fmod(a.lo(), 1.0);
    checks.emplace_back(acos(Interval(c)), acos(Real(c)));
    for (const auto& [enc, exact] : checks) {
      if (!oracle::encloses(enc, exact)) ++failures;
    }
    // Complex argument of a point off the negative real axis.
    if (!(a.lo() < 0 && b.contains_zero())) {
      momtech::RigorousComplex z{Interval(a.lo()), Interval(b.lo())};
      if (!oracle::encloses(arg(z), atan2(Real(b.lo()), Real(a.lo())))) ++failures;
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("inclusion isotonicity: widening an input never shrinks the output") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 4.0);
  using Op = std::function<Interval(const Interval&)>;
  const std::vector<Op> ops = {
      [](const Interval& x) { return exp(x); },
      [](const Interval& x) { return log(x); },
      [](const Interval& x) { return sqrt(x); },
      [](const Interval& x) { return sin(x); },
      [](const Interval& x) { return cos(x); },
      [](const Interval& x) { return sqr(x - Interval(1.0)); },
      [](const Interval& x) { return Interval(1.0) / x; },
      [](const Interval& x) { return pow_two_thirds(x); },
  };
  int failures = 0;
  for (int i = 0; i < 2000; ++i) {
    double a = u(rng);
    double b = a + u(rng) * 0.1;
    Interval narrow(a, b);
    Interval wide(a * 0.9, b * 1.1);
    for (const auto& op : ops) {
      if (!op(wide).contains(op(narrow))) ++failures;
    }
  }
  CHECK(failures == 0);
}
