#include "momtech/spectrum.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "momtech/error.hpp"

namespace momtech {

PairRef PairRef::normalized(int a, int b, long p, long q) {
  if (b == kInfinity) return to_infinity(a);
  if (a == kInfinity) return to_infinity(b);
  if (a > b) return {b, a, -p, -q};
  if (a == b && (p < 0 || (p == 0 && q < 0))) return {a, b, -p, -q};
  return {a, b, p, q};
}

std::string to_string(const PairRef& ref) {
  if (ref.is_infinity()) return "(" + std::to_string(ref.first) + ",inf)";
  return "(" + std::to_string(ref.first) + "," + std::to_string(ref.second) + "+" + std::to_string(ref.p) + "," +
         std::to_string(ref.q) + ")";
}

std::string type_string(const std::array<int, 3>& type) {
  return "(" + std::to_string(type[0]) + "," + std::to_string(type[1]) + "," + std::to_string(type[2]) + ")";
}

namespace {

struct Candidate {
  PairRef ref;
  Interval ortho;
};

// Every pair whose orthodistance enclosure reaches down to `bound`.
// For a finite pair, o <= bound forces |c_j + t - c_i| <= e^(bound/2) sqrt(d_i d_j),
// so translates with |t| > |c_j - c_i| + e^(bound/2) sqrt(d_i d_j) are skipped.
std::vector<Candidate> collect_pairs(const CuspDiagram& diagram, double bound) {
  const auto& balls = diagram.balls();
  const int n = static_cast<int>(balls.size());
  std::vector<Candidate> out;
  for (int i = 0; i < n; ++i) {
    Interval o = orthodistance(diagram.horoball(i), Horoball::at_infinity());
    if (o.lo() <= bound) out.push_back({PairRef::to_infinity(i), o});
  }
  const Interval reach = exp(Interval(bound) / Interval(2.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Interval radius =
          abs(balls[j].center - balls[i].center) + reach * sqrt(balls[i].diameter.hi() * balls[j].diameter.hi());
      auto vectors = diagram.lattice().vectors_within(radius.hi());
      if (i != j) vectors.push_back({0, 0, Interval(0.0)});
      for (const auto& v : vectors) {
        PairRef ref{i, j, v.p, v.q};
        if (PairRef::normalized(i, j, v.p, v.q) != ref) continue;
        Interval o = orthodistance(diagram.horoball(i), diagram.horoball(j, v.p, v.q));
        if (o.lo() <= bound) out.push_back({ref, o});
      }
    }
  }
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

PairRef apply(const SymmetryAction& act, const PairRef& ref) {
  if (ref.is_infinity()) return PairRef::to_infinity(act.image[ref.first]);
  const auto& oi = act.offset[ref.first];
  const auto& oj = act.offset[ref.second];
  long p = oj.first + ref.p * act.a + ref.q * act.c - oi.first;
  long q = oj.second + ref.p * act.b + ref.q * act.d - oi.second;
  return PairRef::normalized(act.image[ref.first], act.image[ref.second], p, q);
}

struct Group {
  std::vector<PairRef> members;
  Interval ortho;
  std::optional<int> label;
};

// h must come before g in any certified order.
bool precedes(const Group& h, const Group& g) {
  if (h.ortho.overlaps(g.ortho)) return h.label && g.label && *h.label < *g.label;
  return h.ortho.hi() < g.ortho.lo();
}

}  // namespace

std::vector<OrthopairClass> ortho_spectrum(const CuspDiagram& diagram, const Interval& cutoff) {
  if (cutoff.lo() < 0) fail(ErrorKind::Precondition, "spectrum cutoff must be non-negative: " + to_string(cutoff));
  auto candidates = collect_pairs(diagram, cutoff.hi());

  std::map<PairRef, int> where;
  for (int k = 0; k < static_cast<int>(candidates.size()); ++k) where[candidates[k].ref] = k;

  std::map<PairRef, int> declared;
  const auto& balls = diagram.balls();
  for (int i = 0; i < static_cast<int>(balls.size()); ++i)
    if (balls[i].label) declared[PairRef::to_infinity(i)] = *balls[i].label;
  for (const auto& pr : diagram.pairs()) {
    PairRef ref = PairRef::normalized(pr.first, pr.second, pr.p, pr.q);
    auto [it, fresh] = declared.emplace(ref, pr.label);
    if (!fresh && it->second != pr.label)
      fail(ErrorKind::AmbiguousSpectrum, "pair " + to_string(ref) + " declared with labels " +
                                             std::to_string(it->second) + " and " + std::to_string(pr.label));
  }

  UnionFind uf(candidates.size());
  std::map<int, int> first_with_label;
  for (int k = 0; k < static_cast<int>(candidates.size()); ++k) {
    auto it = declared.find(candidates[k].ref);
    if (it == declared.end()) continue;
    auto [seen, fresh] = first_with_label.emplace(it->second, k);
    if (!fresh) uf.unite(seen->second, k);
  }
  for (const auto& sym : diagram.symmetries()) {
    SymmetryAction act = resolve_symmetry(diagram, sym);
    for (int k = 0; k < static_cast<int>(candidates.size()); ++k) {
      auto it = where.find(apply(act, candidates[k].ref));
      if (it != where.end()) uf.unite(k, it->second);
    }
  }

  std::map<int, Group> by_root;
  for (int k = 0; k < static_cast<int>(candidates.size()); ++k) {
    const auto& cand = candidates[k];
    auto [it, fresh] = by_root.try_emplace(uf.find(k));
    Group& g = it->second;
    if (fresh) {
      g.ortho = cand.ortho;
    } else if (!g.ortho.overlaps(cand.ortho)) {
      fail(ErrorKind::AmbiguousSpectrum, "pair " + to_string(cand.ref) + " with orthodistance " +
                                             to_string(cand.ortho) + " is identified with pairs at " +
                                             to_string(g.ortho));
    } else {
      g.ortho = intersect(g.ortho, cand.ortho);
    }
    g.members.push_back(cand.ref);
    auto lab = declared.find(cand.ref);
    if (lab != declared.end()) {
      if (g.label && *g.label != lab->second)
        fail(ErrorKind::AmbiguousSpectrum, "pair " + to_string(cand.ref) + " labeled " + std::to_string(lab->second) +
                                               " is identified with a class labeled " + std::to_string(*g.label));
      g.label = lab->second;
    }
  }

  std::vector<Group> groups;
  for (auto& [root, g] : by_root) {
    std::sort(g.members.begin(), g.members.end());
    groups.push_back(std::move(g));
  }

  for (std::size_t a = 0; a < groups.size(); ++a) {
    for (std::size_t b = a + 1; b < groups.size(); ++b) {
      const Group& g = groups[a];
      const Group& h = groups[b];
      if (g.ortho.overlaps(h.ortho)) {
        if (!g.label || !h.label)
          fail(ErrorKind::AmbiguousSpectrum, "orthodistances " + to_string(g.ortho) + " of " +
                                                 to_string(g.members.front()) + " and " + to_string(h.ortho) + " of " +
                                                 to_string(h.members.front()) +
                                                 " overlap but are not certified equal");
      } else if (g.label && h.label && (*g.label < *h.label) != (g.ortho.hi() < h.ortho.lo())) {
        fail(ErrorKind::AmbiguousSpectrum, "labels " + std::to_string(*g.label) + " and " + std::to_string(*h.label) +
                                               " contradict the certified order of their orthodistances");
      }
    }
  }

  std::vector<OrthopairClass> out;
  std::vector<bool> used(groups.size(), false);
  for (std::size_t step = 0; step < groups.size(); ++step) {
    std::size_t pick = groups.size();
    for (std::size_t a = 0; a < groups.size() && pick == groups.size(); ++a) {
      if (used[a]) continue;
      bool minimal = true;
      for (std::size_t b = 0; b < groups.size() && minimal; ++b)
        if (!used[b] && b != a && precedes(groups[b], groups[a])) minimal = false;
      if (minimal) pick = a;
    }
    if (pick == groups.size()) fail(ErrorKind::AmbiguousSpectrum, "orthopair classes admit no consistent order");
    used[pick] = true;
    Group& g = groups[pick];
    OrthopairClass cls;
    cls.index = static_cast<int>(out.size()) + 1;
    cls.ortho = g.ortho;
    cls.e = exp(g.ortho / Interval(2.0));
    cls.witnesses = std::move(g.members);
    cls.label = g.label;
    out.push_back(std::move(cls));
  }
  return out;
}

std::vector<TripleClass> enumerate_triples(const CuspDiagram& diagram, const std::vector<OrthopairClass>& spectrum) {
  std::map<PairRef, int> class_of;
  for (const auto& cls : spectrum)
    for (const auto& w : cls.witnesses) class_of[w] = cls.index;

  const int n = static_cast<int>(diagram.balls().size());
  std::vector<int> to_inf(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    auto it = class_of.find(PairRef::to_infinity(i));
    if (it != class_of.end()) to_inf[i] = it->second;
  }

  auto keep = [](int ci, int cj, int opposite) {
    if (ci == cj) return true;
    if (opposite == ci || opposite == cj) return false;
    return opposite > ci && opposite > cj;
  };

  std::vector<TripleClass> out;
  for (const auto& [ref, c] : class_of) {
    if (ref.is_infinity()) continue;
    if (ref.first >= n || ref.second >= n)
      fail(ErrorKind::Precondition, "spectrum witness " + to_string(ref) + " is not a pair of this diagram");
    int ci = to_inf[ref.first];
    int cj = to_inf[ref.second];
    if (ci == 0 || cj == 0 || !keep(ci, cj, c)) continue;
    TripleClass t;
    t.type = {ci, cj, c};
    std::sort(t.type.begin(), t.type.end());
    t.witnesses = {ref};
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), [](const TripleClass& a, const TripleClass& b) {
    return std::tie(a.type, a.witnesses) < std::tie(b.type, b.witnesses);
  });
  std::map<std::array<int, 3>, int> count;
  for (const auto& t : out) ++count[t.type];
  for (auto& t : out) t.multiplicity = count[t.type];
  return out;
}

Interval center_distance_of_triple(int k, int m, int n, const std::vector<OrthopairClass>& spectrum) {
  auto e_of = [&](int idx) -> const Interval& {
    for (const auto& cls : spectrum)
      if (cls.index == idx) return cls.e;
    fail(ErrorKind::Precondition, "orthopair class " + std::to_string(idx) + " is not in the spectrum");
  };
  return e_of(n) / (e_of(m) * e_of(k));
}

const char* to_string(ValidationCode code) {
  switch (code) {
    case ValidationCode::NoTangency: return "no-tangency";
    case ValidationCode::Overlap: return "overlap";
    case ValidationCode::MmmTriple: return "mmm-triple";
    case ValidationCode::Shadow: return "shadow";
    case ValidationCode::Spectrum: return "spectrum";
    case ValidationCode::Symmetry: return "symmetry";
  }
  return "unknown";
}

bool ValidationReport::has(ValidationCode code) const {
  return std::any_of(failures.begin(), failures.end(), [&](const ValidationIssue& f) { return f.code == code; });
}

ValidationReport validate_diagram(const CuspDiagram& diagram) {
  ValidationReport report;
  const auto& balls = diagram.balls();
  auto add = [&](ValidationCode code, std::string msg) { report.failures.push_back({code, std::move(msg)}); };

  for (std::size_t s = 0; s < diagram.symmetries().size(); ++s) {
    try {
      resolve_symmetry(diagram, diagram.symmetries()[s]);
    } catch (const Error& err) {
      add(ValidationCode::Symmetry, "symmetry " + std::to_string(s) + ": " + err.what());
    }
  }

  bool tangent = std::any_of(balls.begin(), balls.end(), [](const DiagramBall& b) { return b.diameter.contains(1.0); });
  if (!tangent) add(ValidationCode::NoTangency, "no ball has diameter enclosing 1, so o(1) does not enclose 0");

  for (std::size_t i = 0; i < balls.size(); ++i) {
    try {
      shadow_of(diagram.horoball(static_cast<int>(i)));
    } catch (const Error& err) {
      add(ValidationCode::Shadow, "ball " + std::to_string(i) + ": " + err.what());
    }
  }

  try {
    for (const auto& cand : collect_pairs(diagram, 0.0))
      if (cand.ortho.hi() < 0)
        add(ValidationCode::Overlap, "pair " + to_string(cand.ref) + " overlaps: orthodistance " + to_string(cand.ortho));
  } catch (const Error& err) {
    add(ValidationCode::Overlap, err.what());
  }

  double reach = 0.0;
  for (const auto& b : balls) reach = std::max(reach, (-log(b.diameter)).hi());
  try {
    auto spectrum = ortho_spectrum(diagram, Interval(reach));
    for (const auto& t : enumerate_triples(diagram, spectrum))
      if (t.type[0] == t.type[2])
        add(ValidationCode::MmmTriple, "triple of type " + type_string(t.type) + " at " + to_string(t.witnesses.front()));
  } catch (const Error& err) {
    add(ValidationCode::Spectrum, err.what());
  }
  return report;
}

}  // namespace momtech
