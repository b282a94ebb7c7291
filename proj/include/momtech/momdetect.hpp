#pragma once

#include <string>
#include <vector>

#include "momtech/spectrum.hpp"

namespace momtech {

struct CombinatorialMomStructure {
  std::vector<int> triples;   // indices into the triple list, ascending
  std::vector<int> pair_set;  // ascending
  std::vector<std::array<int, 3>> types;
};

/// Every set of n distinct triple classes whose types together use exactly n
/// orthopair indices.
std::vector<CombinatorialMomStructure> find_mom_structures(const std::vector<TripleClass>& triples, int n);

/// False iff exactly two of the structure's classes share a type {k, l, m}
/// with k, l, m distinct.
bool is_torus_friendly(const CombinatorialMomStructure& s);

enum class HandleSafety { Safe, Conditional, Large };

const char* to_string(HandleSafety s);

/// Thresholds sqrt(2) and 1.5152. Throws Precondition if e < 1 and
/// Uncertifiable if e straddles a threshold.
HandleSafety classify_handle_safety(const Interval& e);

struct AreaFlags {
  bool no_111_triples = false;
  bool center_distance_at_least_e2 = false;
  bool overlap_union = false;  // two e3/2 disks meeting at most once
  bool small_e2 = false;       // branch without a closed form
};

enum class AreaCase { Baseline, E2Scaled, OverlapUnion, SmallE2 };

const char* to_string(AreaCase c);

struct AreaBoundReport {
  Interval area_lower;
  Interval volume_lower;
  AreaCase case_tag = AreaCase::Baseline;
};

/// Lower bound on the area of the maximal cusp torus and the cusp volume.
/// e2 enclosures reaching down to 1 - 1e-12 are clamped to 1.
AreaBoundReport area_lower_bound(const Interval& e2, const Interval& e3, const AreaFlags& flags);

/// Area of the intersection of two disks of radii r1, r2 with centers d apart.
Interval lens_area(const Interval& r1, const Interval& r2, const Interval& d);

std::string format_mom(const CombinatorialMomStructure& s);
std::string format_bound(const AreaBoundReport& r);

}  // namespace momtech
