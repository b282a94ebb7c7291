#pragma once

#include <array>
#include <string>
#include <vector>

#include "momtech/cusp_diagram.hpp"
#include "momtech/interval.hpp"
#include "momtech/lattice.hpp"
#include "momtech/rigorous_complex.hpp"
#include "momtech/volume.hpp"

namespace momtech {

// Text formats. Numbers are decimals with an optional radius, `m±r` or
// `m+-r`; the decimal m is enclosed exactly when it is a double and by its
// neighbouring doubles otherwise. `#` starts a comment. Errors are Parse
// errors prefixed with `source:line:column:`.

/// Enclosure of a `m±r` token.
Interval parse_number(const std::string& token);

/// `m±r` with 30 significant digits; parse_number of the result contains x.
std::string format_number(const Interval& x);

/// triangulation <name>
/// tetrahedra <n>
/// cusps <k>
/// tet <i> <n0> <n1> <n2> <n3> <p0> <p1> <p2> <p3>
/// shape <i> <re> <im>
/// delta <d>
///
/// Face f of tetrahedron i is glued to face p_f(f) of tetrahedron n_f, vertex
/// v going to p_f(v); p_f is written as the four digits p_f(0)..p_f(3).
struct Triangulation {
  std::string name;
  int cusps = 0;
  std::vector<std::array<int, 4>> neighbors;
  std::vector<std::array<std::array<int, 4>, 4>> gluings;
  std::vector<RigorousComplex> shapes;
  Interval delta{0.0};

  ShapeSolution solution() const { return ShapeSolution(shapes, delta); }
  friend bool operator==(const Triangulation&, const Triangulation&) = default;
};

/// Structural unless every gluing is a permutation returned by its partner
/// with the inverse permutation.
void check_triangulation(const Triangulation& t);

Triangulation parse_triangulation(const std::string& text, const std::string& source = "<input>");
std::string serialize_triangulation(const Triangulation& t);

/// lattice <mu_re> <mu_im> <lambda_re> <lambda_im>
/// ball <center_re> <center_im> <diameter> [label]
/// pair <i> <j> <p> <q> <label>
/// symmetry <rot_re> <rot_im> <shift_re> <shift_im>
CuspDiagram parse_diagram(const std::string& text, const std::string& source = "<input>");
std::string serialize_diagram(const CuspDiagram& d);

/// cusp <mu_re> <mu_im> <lambda_re> <lambda_im>
CuspLattice parse_cusp_shape(const std::string& text, const std::string& source = "<input>");
std::string serialize_cusp_shape(const CuspLattice& c);

/// Whole file as text; Parse error if unreadable.
std::string read_text_file(const std::string& path);

}  // namespace momtech
