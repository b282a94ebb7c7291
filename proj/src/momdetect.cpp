#include "momtech/momdetect.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "momtech/error.hpp"

namespace momtech {

namespace {

void search(const std::vector<TripleClass>& triples, int n, std::size_t start, std::vector<int>& chosen,
            std::set<int>& used, std::vector<CombinatorialMomStructure>& out) {
  if (static_cast<int>(chosen.size()) == n) {
    if (static_cast<int>(used.size()) != n) return;
    CombinatorialMomStructure s;
    s.triples = chosen;
    s.pair_set.assign(used.begin(), used.end());
    for (int t : chosen) s.types.push_back(triples[t].type);
    out.push_back(std::move(s));
    return;
  }
  for (std::size_t k = start; k < triples.size(); ++k) {
    std::set<int> next = used;
    next.insert(triples[k].type.begin(), triples[k].type.end());
    if (static_cast<int>(next.size()) > n) continue;
    chosen.push_back(static_cast<int>(k));
    search(triples, n, k + 1, chosen, next, out);
    chosen.pop_back();
  }
}

// Comparison cutoffs widened one ulp outward.
Interval threshold(double x) { return Interval(rounding::next_down(x), rounding::next_up(x)); }

Interval clamp(const Interval& x, double lo, double hi) {
  return Interval(std::clamp(x.lo(), lo, hi), std::clamp(x.hi(), lo, hi));
}

// Lens area at point-like inputs; radii and distance are tight enclosures.
Interval lens_point(const Interval& r1, const Interval& r2, const Interval& d) {
  const Interval zero(0.0);
  if ((r1 + r2).hi() <= d.lo()) return zero;
  if (d.hi() <= abs(r1 - r2).lo()) {
    Interval r = min(r1, r2);
    return pi() * sqr(r);
  }
  const Interval two(2.0);
  Interval c1 = clamp((sqr(d) + sqr(r1) - sqr(r2)) / (two * d * r1), -1.0, 1.0);
  Interval c2 = clamp((sqr(d) + sqr(r2) - sqr(r1)) / (two * d * r2), -1.0, 1.0);
  Interval k = (r1 + r2 - d) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
  k = Interval(std::max(0.0, k.lo()), std::max(0.0, k.hi()));
  Interval a = sqr(r1) * acos(c1) + sqr(r2) * acos(c2) - sqrt(k) / two;
  return Interval(std::max(0.0, a.lo()), std::max(0.0, a.hi()));
}

}  // namespace

std::vector<CombinatorialMomStructure> find_mom_structures(const std::vector<TripleClass>& triples, int n) {
  if (n < 1) fail(ErrorKind::Precondition, "Mom-n structures need n >= 1");
  std::vector<CombinatorialMomStructure> out;
  std::vector<int> chosen;
  std::set<int> used;
  search(triples, n, 0, chosen, used, out);
  return out;
}

bool is_torus_friendly(const CombinatorialMomStructure& s) {
  std::map<std::array<int, 3>, int> count;
  for (const auto& t : s.types)
    if (t[0] != t[1] && t[1] != t[2]) ++count[t];
  return std::none_of(count.begin(), count.end(), [](const auto& kv) { return kv.second == 2; });
}

const char* to_string(HandleSafety s) {
  switch (s) {
    case HandleSafety::Safe: return "SAFE";
    case HandleSafety::Conditional: return "CONDITIONAL";
    case HandleSafety::Large: return "LARGE";
  }
  return "?";
}

HandleSafety classify_handle_safety(const Interval& e) {
  static const Interval t1 = threshold(1.4142135623730951);  // sqrt(2)
  static const Interval t2 = threshold(1.5152);
  if (e.hi() < 1.0) fail(ErrorKind::Precondition, "e_n must be at least 1: " + to_string(e));
  if (e.hi() <= t1.lo()) return HandleSafety::Safe;
  if (e.lo() > t1.hi() && e.hi() <= t2.lo()) return HandleSafety::Conditional;
  if (e.lo() > t2.hi()) return HandleSafety::Large;
  fail(ErrorKind::Uncertifiable, "e_n = " + to_string(e) + " straddles a handle-safety threshold (sqrt 2 or 1.5152)");
}

const char* to_string(AreaCase c) {
  switch (c) {
    case AreaCase::Baseline: return "BASELINE";
    case AreaCase::E2Scaled: return "E2_SCALED";
    case AreaCase::OverlapUnion: return "OVERLAP_UNION";
    case AreaCase::SmallE2: return "SMALL_E2";
  }
  return "?";
}

Interval lens_area(const Interval& r1, const Interval& r2, const Interval& d) {
  if (r1.lo() < 0 || r2.lo() < 0 || d.lo() < 0) fail(ErrorKind::Precondition, "lens area needs non-negative inputs");
  // Decreasing in d, increasing in both radii.
  Interval low = lens_point(Interval(r1.lo()), Interval(r2.lo()), Interval(d.hi()));
  Interval high = lens_point(Interval(r1.hi()), Interval(r2.hi()), Interval(d.lo()));
  return Interval(low.lo(), std::max(low.lo(), high.hi()));
}

AreaBoundReport area_lower_bound(const Interval& e2_in, const Interval& e3, const AreaFlags& flags) {
  constexpr double kTolerance = 1e-12;
  if (e2_in.lo() < 1.0 - kTolerance) fail(ErrorKind::Precondition, "e2 must be at least 1: " + to_string(e2_in));
  if (e3.hi() < e2_in.lo()) fail(ErrorKind::Precondition, "e3 " + to_string(e3) + " lies below e2 " + to_string(e2_in));
  const Interval e2(std::max(1.0, e2_in.lo()), std::max(1.0, e2_in.hi()));
  const bool scaled = flags.no_111_triples && flags.center_distance_at_least_e2;
  if (flags.overlap_union && !scaled)
    fail(ErrorKind::Precondition, "the overlap-union bound needs the no-(1,1,1) and center-distance facts");

  const Interval sqrt3 = sqrt(Interval(3.0));
  AreaBoundReport r;
  if (flags.overlap_union) {
    const Interval radius = e3 / Interval(2.0);
    r.area_lower = Interval(2.0) * (pi() / Interval(4.0)) * sqr(e3) - lens_area(radius, radius, e2);
    r.case_tag = AreaCase::OverlapUnion;
  } else if (scaled) {
    r.area_lower = sqrt3 * sqr(e2);
    r.case_tag = AreaCase::E2Scaled;
  } else if (flags.small_e2) {
    r.area_lower = sqrt3;
    r.case_tag = AreaCase::SmallE2;
  } else {
    r.area_lower = sqrt3;
    r.case_tag = AreaCase::Baseline;
  }
  r.volume_lower = r.area_lower / Interval(2.0);
  return r;
}

std::string format_mom(const CombinatorialMomStructure& s) {
  std::string out = "MOM " + std::to_string(s.triples.size()) + " pairset={";
  for (std::size_t k = 0; k < s.pair_set.size(); ++k) out += (k ? "," : "") + std::to_string(s.pair_set[k]);
  out += "} triples=";
  for (std::size_t k = 0; k < s.types.size(); ++k) out += (k ? ";" : "") + type_string(s.types[k]);
  out += std::string(" torus_friendly=") + (is_torus_friendly(s) ? "true" : "false");
  return out;
}

std::string format_bound(const AreaBoundReport& r) {
  return "BOUND area=" + to_string(r.area_lower) + " volume=" + to_string(r.volume_lower) +
         " case=" + to_string(r.case_tag);
}

}  // namespace momtech
