#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "momtech/cusp_diagram.hpp"

namespace momtech {

/// An H-orbit of a horoball pair: (B_first, B_second + p mu + q lambda), or
/// (B_first, B_inf) when second == kInfinity. Always stored normalized.
struct PairRef {
  static constexpr int kInfinity = -1;

  int first = 0;
  int second = kInfinity;
  long p = 0;
  long q = 0;

  static PairRef to_infinity(int ball) { return {ball, kInfinity, 0, 0}; }
  /// Picks the representative with first <= second, and (p, q) lexicographically
  /// positive when first == second.
  static PairRef normalized(int a, int b, long p, long q);

  bool is_infinity() const { return second == kInfinity; }
  friend auto operator<=>(const PairRef&, const PairRef&) = default;
};

std::string to_string(const PairRef& ref);

struct OrthopairClass {
  int index = 0;  // 1-based
  Interval ortho;
  Interval e;  // exp(ortho / 2)
  std::vector<PairRef> witnesses;
  std::optional<int> label;
};

/// Orthopair classes of every pair whose orthodistance may lie below
/// cutoff.hi, in ascending order.
///
/// Pairs are grouped when a declared label or a declared symmetry identifies
/// them; a group's enclosure is the intersection of its members. Distinct
/// groups with overlapping enclosures raise AmbiguousSpectrum unless both carry
/// labels, which then fix their order.
std::vector<OrthopairClass> ortho_spectrum(const CuspDiagram& diagram, const Interval& cutoff);

/// A triple class (B_inf, B_i, B_j + t) with t carried in the witness pair.
struct TripleClass {
  std::array<int, 3> type{};  // sorted class indices
  std::vector<PairRef> witnesses;
  int multiplicity = 0;
};

std::string type_string(const std::array<int, 3>& type);

/// Rooted at B_inf. A rooted triple of type {k, l, m} is kept when its edge
/// opposite B_inf is the largest of three distinct indices, or the odd one out
/// of {k, k, m}; {k, k, k} rooted triples are all kept.
std::vector<TripleClass> enumerate_triples(const CuspDiagram& diagram, const std::vector<OrthopairClass>& spectrum);

/// e_n / (e_m e_k): the planar distance between the shadows of the two
/// horoballs of a triple whose edges to B_inf have classes k, m and whose
/// mutual edge has class n.
Interval center_distance_of_triple(int k, int m, int n, const std::vector<OrthopairClass>& spectrum);

enum class ValidationCode { NoTangency, Overlap, MmmTriple, Shadow, Spectrum, Symmetry };

const char* to_string(ValidationCode code);

struct ValidationIssue {
  ValidationCode code;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> failures;
  bool ok() const { return failures.empty(); }
  bool has(ValidationCode code) const;
};

ValidationReport validate_diagram(const CuspDiagram& diagram);

}  // namespace momtech
