#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "momtech/census.hpp"
#include "momtech/error.hpp"
#include "momtech/smith.hpp"

namespace momtech {

namespace {

constexpr std::array<int, 3> kStandardPerm{0, 2, 1};

struct UnionFind {
  std::vector<int> parent;
  std::vector<int> parity;  // relative to parent
  explicit UnionFind(int n) : parent(n), parity(n, 0) { std::iota(parent.begin(), parent.end(), 0); }
  std::pair<int, int> find(int x) {
    int p = 0;
    int root = x;
    while (parent[root] != root) {
      p ^= parity[root];
      root = parent[root];
    }
    // Path compression keeping parities.
    int acc = p;
    while (parent[x] != x) {
      int next = parent[x];
      int px = parity[x];
      parent[x] = root;
      parity[x] = acc;
      acc ^= px;
      x = next;
    }
    return {root, p};
  }
  int root(int x) { return find(x).first; }
  // Returns false on a parity conflict.
  bool unite(int a, int b, int rel = 0) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == rel;
    parent[rb] = ra;
    parity[rb] = pa ^ pb ^ rel;
    return true;
  }
};

bool is_odd(const std::array<int, 3>& p) {
  int inversions = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 1;
}

std::array<int, 3> inverse(const std::array<int, 3>& p) {
  std::array<int, 3> q{};
  for (int k = 0; k < 3; ++k) q[p[k]] = k;
  return q;
}

int local_edge(const Dipyramid& d, int a, int b) {
  if (a > b) std::swap(a, b);
  const int v = d.sides;
  if (a == 0) return b - 2;
  if (a == 1) return v + b - 2;
  int i = a - 2, j = b - 2;
  if (j == i + 1) return 2 * v + i;
  if (i == 0 && j == v - 1) return 2 * v + v - 1;
  fail(ErrorKind::Internal, "not an edge of the dipyramid");
}

// Endpoints of a local edge, lower vertex first.
std::array<int, 2> edge_ends(const Dipyramid& d, int e) {
  const int v = d.sides;
  if (e < v) return {0, 2 + e};
  if (e < 2 * v) return {1, 2 + e - v};
  int i = e - 2 * v;
  int a = 2 + i, b = 2 + (i + 1) % v;
  return {std::min(a, b), std::max(a, b)};
}

// Faces of a dipyramid containing a local edge.
std::array<int, 2> faces_of_edge(const Dipyramid& d, int e) {
  const int v = d.sides;
  if (e < v) return {(e + v - 1) % v, e};
  if (e < 2 * v) return {v + (e - v + v - 1) % v, v + (e - v)};
  int i = e - 2 * v;
  return {i, v + i};
}

struct Layout {
  std::vector<int> vertex_offset, edge_offset, face_offset;
  int vertices = 0, edges = 0, faces = 0;
  explicit Layout(const Inventory& inv) {
    for (const auto& d : inv) {
      vertex_offset.push_back(vertices);
      edge_offset.push_back(edges);
      face_offset.push_back(faces);
      vertices += d.vertex_count();
      edges += d.edge_count();
      faces += d.face_count();
    }
  }
};

}  // namespace

std::array<int, 3> Dipyramid::face_vertices(int face) const {
  const int v = sides;
  if (face < v) return {0, 2 + face, 2 + (face + 1) % v};
  int i = face - v;
  return {1, 2 + (i + 1) % v, 2 + i};
}

std::string to_string(const Inventory& inv) {
  std::string out;
  for (std::size_t k = 0; k < inv.size(); ++k) out += (k ? "+" : "") + inv[k].name();
  return out;
}

std::vector<Inventory> polyhedron_inventories(int n) {
  if (n != 2 && n != 3) fail(ErrorKind::Unsupported, "polyhedron inventories exist only for Mom-2 and Mom-3");
  std::vector<Inventory> out;
  // Non-increasing partitions of 3n into exactly n parts >= 2.
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (static_cast<int>(parts.size()) == n) {
      if (remaining != 0) return;
      Inventory inv;
      for (int p : parts)
        if (p > 2) inv.push_back({p});
      if (!inv.empty()) out.push_back(inv);
      return;
    }
    for (int p = std::min(max_part, remaining); p >= 2; --p) {
      parts.push_back(p);
      rec(remaining - p, p);
      parts.pop_back();
    }
  };
  rec(3 * n, 3 * n);
  return out;
}

GluingDescription GluingDescription::standard(Inventory polyhedra, std::vector<int> partner) {
  GluingDescription g;
  g.polyhedra = std::move(polyhedra);
  g.perm.assign(partner.size(), kStandardPerm);
  g.partner = std::move(partner);
  return g;
}

int GluingDescription::face_count() const {
  int n = 0;
  for (const auto& d : polyhedra) n += d.face_count();
  return n;
}

int GluingDescription::face_offset(int polyhedron) const {
  int n = 0;
  for (int p = 0; p < polyhedron; ++p) n += polyhedra[p].face_count();
  return n;
}

std::pair<int, int> GluingDescription::locate(int face) const {
  for (int p = 0; p < static_cast<int>(polyhedra.size()); ++p) {
    if (face < polyhedra[p].face_count()) return {p, face};
    face -= polyhedra[p].face_count();
  }
  fail(ErrorKind::Structural, "face index out of range");
}

void check_gluing(const GluingDescription& g) {
  for (const auto& d : g.polyhedra)
    if (d.sides < 3) fail(ErrorKind::Structural, "dipyramids need at least 3 sides");
  const int n = g.face_count();
  if (static_cast<int>(g.partner.size()) != n || static_cast<int>(g.perm.size()) != n)
    fail(ErrorKind::Structural, "gluing has " + std::to_string(g.partner.size()) + " partners for " +
                                    std::to_string(n) + " faces");
  for (int f = 0; f < n; ++f) {
    const int h = g.partner[f];
    const std::string where = "face " + std::to_string(f);
    if (h < 0 || h >= n) fail(ErrorKind::Structural, where + " has no partner");
    if (h == f) fail(ErrorKind::Structural, where + " is glued to itself");
    if (g.partner[h] != f) fail(ErrorKind::Structural, where + " pairing is not an involution");
    auto p = g.perm[f];
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, 3>{0, 1, 2}) fail(ErrorKind::Structural, where + " has an invalid vertex map");
    if (g.perm[h] != inverse(p)) fail(ErrorKind::Structural, where + " vertex map is not inverted by its partner");
    if (p[0] != 0) fail(ErrorKind::Structural, where + " glues a polar vertex to an equatorial one");
  }
}

bool VertexLinkReport::all_tori() const {
  return std::all_of(links.begin(), links.end(), [](const VertexLink& l) { return l.euler == 0 && l.orientable; });
}

int VertexLinkReport::polar_classes() const {
  return static_cast<int>(
      std::count_if(links.begin(), links.end(), [](const VertexLink& l) { return l.kind != VertexKind::Equatorial; }));
}

bool VertexLinkReport::retained() const { return all_tori() && !folded_edge && polar_classes() == 1; }

VertexLinkReport vertex_links(const GluingDescription& g) {
  check_gluing(g);
  const Layout layout(g.polyhedra);
  UnionFind verts(layout.vertices), edges(layout.edges), ends(2 * layout.edges);
  auto end_id = [&](int p, int e, int vertex) {
    return 2 * (layout.edge_offset[p] + e) + (vertex == edge_ends(g.polyhedra[p], e)[0] ? 0 : 1);
  };

  std::vector<bool> orientation_conflict(static_cast<std::size_t>(layout.vertices), false);
  for (int f = 0; f < layout.faces; ++f) {
    auto [p, lf] = g.locate(f);
    auto [q, lh] = g.locate(g.partner[f]);
    const auto& dp = g.polyhedra[p];
    const auto& dq = g.polyhedra[q];
    auto fv = dp.face_vertices(lf);
    auto hv = dq.face_vertices(lh);
    const auto& pm = g.perm[f];
    const int rel = is_odd(pm) ? 0 : 1;
    for (int k = 0; k < 3; ++k) {
      int a = layout.vertex_offset[p] + fv[k];
      int b = layout.vertex_offset[q] + hv[pm[k]];
      if (!verts.unite(a, b, rel)) orientation_conflict[a] = true;
    }
    for (int k = 0; k < 3; ++k) {
      int x0 = fv[k], x1 = fv[(k + 1) % 3];
      int y0 = hv[pm[k]], y1 = hv[pm[(k + 1) % 3]];
      int e = local_edge(dp, x0, x1), e2 = local_edge(dq, y0, y1);
      edges.unite(layout.edge_offset[p] + e, layout.edge_offset[q] + e2);
      ends.unite(end_id(p, e, x0), end_id(q, e2, y0));
      ends.unite(end_id(p, e, x1), end_id(q, e2, y1));
    }
  }

  VertexLinkReport report;
  std::vector<int> class_of(static_cast<std::size_t>(layout.vertices), -1);
  std::vector<int> roots;
  for (int x = 0; x < layout.vertices; ++x) {
    int r = verts.root(x);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      report.links.push_back({});
      report.links.back().kind = VertexKind::Equatorial;
      class_of[x] = static_cast<int>(roots.size()) - 1;
    } else {
      class_of[x] = static_cast<int>(it - roots.begin());
    }
  }
  std::vector<int> polar_count(roots.size(), 0);
  std::vector<int> edges_twice(roots.size(), 0);
  for (int p = 0; p < static_cast<int>(g.polyhedra.size()); ++p) {
    const auto& d = g.polyhedra[p];
    for (int x = 0; x < d.vertex_count(); ++x) {
      int u = class_of[layout.vertex_offset[p] + x];
      auto& link = report.links[u];
      ++link.polyhedron_vertices;
      if (Dipyramid::is_polar(x)) ++polar_count[u];
      edges_twice[u] += Dipyramid::is_polar(x) ? d.sides : 4;  // corners at x
      if (orientation_conflict[layout.vertex_offset[p] + x]) link.orientable = false;
    }
  }
  // A parity conflict anywhere in a class makes its link non-orientable.
  for (int x = 0; x < layout.vertices; ++x)
    if (orientation_conflict[x]) report.links[class_of[x]].orientable = false;

  std::vector<int> link_vertices(roots.size(), 0);
  std::vector<bool> seen_end(static_cast<std::size_t>(2 * layout.edges), false);
  for (int p = 0; p < static_cast<int>(g.polyhedra.size()); ++p) {
    const auto& d = g.polyhedra[p];
    for (int e = 0; e < d.edge_count(); ++e) {
      auto [lo, hi_end] = edge_ends(d, e);
      for (int x : {lo, hi_end}) {
        int id = ends.root(end_id(p, e, x));
        if (seen_end[id]) continue;
        seen_end[id] = true;
        ++link_vertices[class_of[layout.vertex_offset[p] + x]];
      }
      if (ends.root(end_id(p, e, lo)) == ends.root(end_id(p, e, hi_end))) report.folded_edge = true;
    }
  }

  int sum = 0;
  for (std::size_t u = 0; u < roots.size(); ++u) {
    auto& link = report.links[u];
    link.euler = link_vertices[u] - edges_twice[u] / 2 + link.polyhedron_vertices;
    if (polar_count[u] == link.polyhedron_vertices)
      link.kind = VertexKind::Polar;
    else if (polar_count[u] > 0)
      link.kind = VertexKind::Mixed;
    sum += link.euler;
  }
  std::vector<bool> edge_root(static_cast<std::size_t>(layout.edges), false);
  for (int e = 0; e < layout.edges; ++e) {
    int r = edges.root(e);
    if (!edge_root[r]) {
      edge_root[r] = true;
      ++report.edge_classes;
    }
  }
  const int pairs = layout.faces / 2;
  const int cells = static_cast<int>(g.polyhedra.size());
  report.euler_characteristic = -report.edge_classes + pairs - cells;
  if (!report.folded_edge && sum != -2 * report.euler_characteristic)
    fail(ErrorKind::Internal, "vertex link Euler characteristics do not add up: " + std::to_string(sum) + " vs " +
                                  std::to_string(-2 * report.euler_characteristic));
  return report;
}

std::string to_string(const HomologyInvariants& h) {
  std::string out = std::to_string(h.rank) + "+[";
  for (std::size_t k = 0; k < h.torsion.size(); ++k) out += (k ? "," : "") + std::to_string(h.torsion[k]);
  return out + "]";
}

HomologyInvariants homology(const GluingDescription& g) {
  check_gluing(g);
  const Layout layout(g.polyhedra);
  const int cells = static_cast<int>(g.polyhedra.size());
  std::vector<int> pair_of(static_cast<std::size_t>(layout.faces), -1);
  int pairs = 0;
  for (int f = 0; f < layout.faces; ++f)
    if (f < g.partner[f]) pair_of[f] = pair_of[g.partner[f]] = pairs++;

  // d1: dual edges (face pairs) -> dual vertices (cells).
  IntMatrix d1(static_cast<std::size_t>(cells), std::vector<std::int64_t>(static_cast<std::size_t>(pairs), 0));
  for (int f = 0; f < layout.faces; ++f) {
    if (f > g.partner[f]) continue;
    d1[g.locate(g.partner[f]).first][pair_of[f]] += 1;
    d1[g.locate(f).first][pair_of[f]] -= 1;
  }

  // d2: dual 2-cells (edge classes) -> face pairs crossed while circulating the edge.
  std::vector<std::vector<std::int64_t>> columns;
  std::vector<bool> visited(static_cast<std::size_t>(layout.edges), false);
  for (int p0 = 0; p0 < cells; ++p0) {
    for (int e0 = 0; e0 < g.polyhedra[p0].edge_count(); ++e0) {
      if (visited[layout.edge_offset[p0] + e0]) continue;
      std::vector<std::int64_t> col(static_cast<std::size_t>(pairs), 0);
      const int exit0 = faces_of_edge(g.polyhedra[p0], e0)[0];
      int p = p0, e = e0, exit = exit0;
      for (int steps = 0;; ++steps) {
        if (steps > 2 * layout.faces) fail(ErrorKind::Structural, "edge cycle does not close");
        visited[layout.edge_offset[p] + e] = true;
        const int f = layout.face_offset[p] + exit;
        const int h = g.partner[f];
        col[pair_of[f]] += f < h ? 1 : -1;
        auto [q, lh] = g.locate(h);
        auto fv = g.polyhedra[p].face_vertices(exit);
        auto hv = g.polyhedra[q].face_vertices(lh);
        auto ends = edge_ends(g.polyhedra[p], e);
        int a = -1, b = -1;
        for (int k = 0; k < 3; ++k) {
          if (fv[k] == ends[0]) a = hv[g.perm[f][k]];
          if (fv[k] == ends[1]) b = hv[g.perm[f][k]];
        }
        const int e2 = local_edge(g.polyhedra[q], a, b);
        auto both = faces_of_edge(g.polyhedra[q], e2);
        const int next_exit = both[0] == lh ? both[1] : both[0];
        p = q;
        e = e2;
        exit = next_exit;
        if (p == p0 && e == e0 && exit == exit0) break;
      }
      columns.push_back(std::move(col));
    }
  }
  IntMatrix d2(static_cast<std::size_t>(pairs), std::vector<std::int64_t>(columns.size(), 0));
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (int k = 0; k < pairs; ++k) d2[k][c] = columns[c][k];

  for (int i = 0; i < cells; ++i)
    for (std::size_t c = 0; c < columns.size(); ++c) {
      std::int64_t s = 0;
      for (int k = 0; k < pairs; ++k) s += d1[i][k] * d2[k][c];
      if (s != 0) fail(ErrorKind::Internal, "boundary of a dual 2-cell is not a cycle");
    }

  auto f2 = invariant_factors(d2);
  HomologyInvariants h;
  h.rank = pairs - matrix_rank(d1) - static_cast<int>(f2.size());
  for (auto x : f2)
    if (x > 1) h.torsion.push_back(x);
  return h;
}

std::vector<std::vector<int>> inventory_symmetries(const Inventory& inv) {
  const int n = static_cast<int>(inv.size());
  std::vector<int> offset(n, 0);
  int faces = 0;
  for (int p = 0; p < n; ++p) {
    offset[p] = faces;
    faces += inv[p].face_count();
  }
  // Local symmetries: rotations r^k, then half-turns h r^k.
  auto local = [](const Dipyramid& d) {
    const int v = d.sides;
    std::vector<std::vector<int>> out;
    for (int flip = 0; flip < 2; ++flip)
      for (int k = 0; k < v; ++k) {
        std::vector<int> m(static_cast<std::size_t>(2 * v));
        for (int i = 0; i < v; ++i) {
          int j = (i + k) % v;
          if (!flip) {
            m[i] = j;
            m[v + i] = v + j;
          } else {
            int t = ((-j - 1) % v + v) % v;
            m[i] = v + t;
            m[v + i] = t;
          }
        }
        out.push_back(std::move(m));
      }
    return out;
  };
  std::vector<std::vector<std::vector<int>>> locals;
  for (const auto& d : inv) locals.push_back(local(d));

  std::vector<std::vector<int>> group;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  do {
    bool ok = true;
    for (int p = 0; p < n; ++p) ok = ok && inv[order[p]].sides == inv[p].sides;
    if (!ok) continue;
    std::vector<int> choice(n, 0);
    for (;;) {
      std::vector<int> sigma(static_cast<std::size_t>(faces));
      for (int p = 0; p < n; ++p) {
        const auto& m = locals[p][choice[p]];
        for (int lf = 0; lf < inv[p].face_count(); ++lf) sigma[offset[p] + lf] = offset[order[p]] + m[lf];
      }
      group.push_back(std::move(sigma));
      int p = 0;
      while (p < n && ++choice[p] == static_cast<int>(locals[p].size())) choice[p++] = 0;
      if (p == n) break;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return group;
}

std::string canonical_signature(const GluingDescription& g) {
  check_gluing(g);
  for (const auto& pm : g.perm)
    if (pm != kStandardPerm) fail(ErrorKind::Precondition, "signatures are defined for standard identifications");
  // Put the polyhedra in inventory order first.
  const int n = static_cast<int>(g.polyhedra.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.polyhedra[a].sides > g.polyhedra[b].sides; });
  Inventory inv;
  for (int p : order) inv.push_back(g.polyhedra[p]);
  std::vector<int> relabel(static_cast<std::size_t>(g.face_count()));
  {
    int next = 0;
    std::vector<int> new_offset(n);
    for (int k = 0; k < n; ++k) {
      new_offset[order[k]] = next;
      next += g.polyhedra[order[k]].face_count();
    }
    for (int f = 0; f < g.face_count(); ++f) {
      auto [p, lf] = g.locate(f);
      relabel[f] = new_offset[p] + lf;
    }
  }
  std::vector<int> base(relabel.size());
  for (std::size_t f = 0; f < relabel.size(); ++f) base[relabel[f]] = relabel[g.partner[f]];

  std::vector<int> best = base, image(base.size());
  for (const auto& sigma : inventory_symmetries(inv)) {
    for (std::size_t f = 0; f < base.size(); ++f) image[sigma[f]] = sigma[base[f]];
    if (image < best) best = image;
  }
  std::string out = to_string(inv) + ":";
  for (std::size_t f = 0; f < best.size(); ++f) out += (f ? "." : "") + std::to_string(best[f]);
  return out;
}

}  // namespace momtech
