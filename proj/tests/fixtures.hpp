#pragma once

// Diagrams shared by the unit and acceptance tests.

#include "momtech/cusp_diagram.hpp"

namespace fixtures {

using momtech::Interval;
using momtech::RigorousComplex;

inline RigorousComplex point(double re, double im) { return RigorousComplex(Interval(re), Interval(im)); }

/// One full-sized ball on a square lattice of side 2.
inline momtech::CuspDiagram square_diagram(bool with_rotation) {
  momtech::CuspLattice lattice(point(2, 0), point(0, 2));
  std::vector<momtech::DiagramBall> balls{{point(0, 0), Interval(1.0), std::nullopt}};
  std::vector<momtech::DiagramSymmetry> syms;
  if (with_rotation) syms.push_back({point(0, 1), point(0, 0)});
  return momtech::CuspDiagram(lattice, balls, {}, syms);
}

// Orthodistances of the labeled classes 2 and 3 in the m069-style diagram.
inline constexpr double kM069O2 = 0.4;
inline constexpr double kM069O3 = 0.7;

/// Three pairs of balls realising the labeled edges of an m069-style cusp
/// diagram: full-sized A, A' joined by a class-2 edge, class-3 balls E, E'
/// with tangent shadows (a class-1 edge), class-2 balls C, C' joined by a
/// class-3 edge. Every other pair sits above orthodistance 1.39.
inline momtech::CuspDiagram m069_diagram() {
  using momtech::exp;
  const Interval a(kM069O2), b(kM069O3), two(2.0);
  momtech::CuspLattice lattice(point(5, 0), point(0.5, 3.5));
  const Interval d_e = exp(-b), d_c = exp(-a);
  std::vector<momtech::DiagramBall> balls{
      {point(0, 0), Interval(1.0), 1},
      {RigorousComplex(exp(a / two), Interval(0.0)), Interval(1.0), 1},
      {point(0.3, 1.8), d_e, 3},
      {RigorousComplex(Interval(0.3) + d_e, Interval(1.8)), d_e, 3},
      {point(2.6, 0.9), d_c, 2},
      {RigorousComplex(Interval(2.6) + exp((b - two * a) / two), Interval(0.9)), d_c, 2},
  };
  std::vector<momtech::DeclaredPair> pairs{{0, 1, 0, 0, 2}, {2, 3, 0, 0, 1}, {4, 5, 0, 0, 3}};
  return momtech::CuspDiagram(lattice, balls, pairs);
}

}  // namespace fixtures
