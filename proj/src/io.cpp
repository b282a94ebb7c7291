#include "momtech/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "momtech/error.hpp"

namespace momtech {

namespace {

using namespace rounding;

// value = (neg ? -1 : 1) * digits * 10^exponent, digits without leading or
// trailing zeros ("" for zero).
struct Decimal {
  bool neg = false;
  std::string digits;
  long exponent = 0;
  bool operator==(const Decimal&) const = default;
};

std::optional<Decimal> read_decimal(const std::string& s) {
  Decimal d;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) d.neg = s[i++] == '-';
  std::string mantissa;
  long frac_digits = 0;
  bool any = false, dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      mantissa += c;
      any = true;
      if (dot) ++frac_digits;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) return std::nullopt;
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    const char* begin = s.data() + i;
    if (i < s.size() && s[i] == '+') ++begin;
    auto [end, ec] = std::from_chars(begin, s.data() + s.size(), exp10);
    if (ec != std::errc() || end == begin) return std::nullopt;
    i = static_cast<std::size_t>(end - s.data());
  }
  if (i != s.size()) return std::nullopt;
  std::size_t first = mantissa.find_first_not_of('0');
  if (first == std::string::npos) return Decimal{};
  mantissa.erase(0, first);
  long exponent = exp10 - frac_digits;
  while (mantissa.back() == '0') {
    mantissa.pop_back();
    ++exponent;
  }
  d.digits = mantissa;
  d.exponent = exponent;
  if (d.digits.empty()) d.neg = false;
  return d;
}

// glibc prints the exact binary value when asked for enough digits.
Decimal exact_decimal(double x) {
  std::vector<char> buf(1200);
  std::snprintf(buf.data(), buf.size(), "%.1100e", x);
  return *read_decimal(buf.data());
}

Interval decimal_enclosure(const std::string& s) {
  auto d = read_decimal(s);
  if (!d) fail(ErrorKind::Parse, "malformed number '" + s + "'");
  double x = std::strtod(s.c_str(), nullptr);
  if (!std::isfinite(x)) fail(ErrorKind::Parse, "number '" + s + "' is out of range");
  if (exact_decimal(x) == *d) return Interval(x);
  return {next_down(x), next_up(x)};
}

std::string print30(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.30g", x);
  return buf;
}

struct Token {
  std::string text;
  int column = 0;
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      if (i == raw.size()) break;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
      line.tokens.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

class Reader {
 public:
  Reader(std::string source, const Line& line) : source_(std::move(source)), line_(line) {}

  [[noreturn]] void error(std::size_t token, const std::string& what, ErrorKind kind = ErrorKind::Parse) const {
    int column = token < line_.tokens.size() ? line_.tokens[token].column : 1;
    fail(kind, source_ + ":" + std::to_string(line_.number) + ":" + std::to_string(column) + ": " + what);
  }

  void arity(std::size_t min, std::size_t max) const {
    const std::size_t n = line_.tokens.size() - 1;
    if (n < min) error(line_.tokens.size() - 1, "'" + keyword() + "' needs " + std::to_string(min) + " fields");
    if (n > max) error(max + 1, "unexpected field '" + line_.tokens[max + 1].text + "'");
  }

  const std::string& keyword() const { return line_.tokens[0].text; }
  std::size_t size() const { return line_.tokens.size(); }
  const std::string& text(std::size_t i) const { return line_.tokens[i].text; }

  long integer(std::size_t i) const {
    const auto& s = line_.tokens[i].text;
    long v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) error(i, "expected an integer, got '" + s + "'");
    return v;
  }

  long index(std::size_t i, long bound, const std::string& what) const {
    long v = integer(i);
    if (v < 0 || v >= bound) error(i, what + " " + std::to_string(v) + " out of range [0," + std::to_string(bound) + ")");
    return v;
  }

  Interval number(std::size_t i) const {
    try {
      return parse_number(line_.tokens[i].text);
    } catch (const Error& e) {
      error(i, e.what());
    }
  }

  RigorousComplex complex(std::size_t i) const { return {number(i), number(i + 1)}; }

  int line_number() const { return line_.number; }

 private:
  std::string source_;
  const Line& line_;
};

[[noreturn]] void file_error(const std::string& source, const std::string& what) {
  fail(ErrorKind::Parse, source + ": " + what);
}

std::string complex_fields(const RigorousComplex& z) { return format_number(z.re) + " " + format_number(z.im); }

}  // namespace

Interval parse_number(const std::string& token) {
  std::size_t split = token.find("\xC2\xB1");
  std::size_t width = 2;
  if (split == std::string::npos) split = token.find("+-");
  if (split == std::string::npos) return decimal_enclosure(token);
  Interval mid = decimal_enclosure(token.substr(0, split));
  Interval rad = decimal_enclosure(token.substr(split + width));
  if (rad.lo() < 0) fail(ErrorKind::Parse, "negative radius in '" + token + "'");
  return {sub_down(mid.lo(), rad.hi()), add_up(mid.hi(), rad.hi())};
}

std::string format_number(const Interval& x) {
  if (x.is_point()) return print30(x.lo());
  const double m = x.mid();
  const double r = std::max(sub_up(x.hi(), m), sub_up(m, x.lo()));
  return print30(m) + "\xC2\xB1" + print30(r);
}

void check_triangulation(const Triangulation& t) {
  const int n = static_cast<int>(t.neighbors.size());
  if (static_cast<int>(t.gluings.size()) != n || static_cast<int>(t.shapes.size()) != n)
    fail(ErrorKind::Structural, "gluing, neighbour and shape tables differ in size");
  for (int i = 0; i < n; ++i)
    for (int f = 0; f < 4; ++f) {
      const std::string where = "tetrahedron " + std::to_string(i) + " face " + std::to_string(f);
      const auto& p = t.gluings[i][f];
      std::array<bool, 4> hit{};
      for (int v : p) {
        if (v < 0 || v > 3 || hit[v]) fail(ErrorKind::Structural, where + ": gluing is not a permutation");
        hit[v] = true;
      }
      const int u = t.neighbors[i][f], g = p[f];
      if (u < 0 || u >= n) fail(ErrorKind::Structural, where + ": neighbour " + std::to_string(u) + " does not exist");
      if (u == i && g == f) fail(ErrorKind::Structural, where + ": glued to itself");
      const std::string there = "tetrahedron " + std::to_string(u) + " face " + std::to_string(g);
      if (t.neighbors[u][g] != i) fail(ErrorKind::Structural, where + ": " + there + " is glued elsewhere");
      for (int v = 0; v < 4; ++v)
        if (t.gluings[u][g][p[v]] != v)
          fail(ErrorKind::Structural, where + ": " + there + " does not return with the inverse permutation");
    }
}

Triangulation parse_triangulation(const std::string& text, const std::string& source) {
  Triangulation t;
  int tets = -1;
  bool have_name = false, have_cusps = false, have_delta = false;
  std::vector<bool> tet_seen, shape_seen;
  for (const auto& line : split_lines(text)) {
    Reader r(source, line);
    const auto& key = r.keyword();
    auto once = [&](bool& flag) {
      if (flag) r.error(0, "duplicate '" + key + "' line");
      flag = true;
    };
    auto need_count = [&] {
      if (tets < 0) r.error(0, "'tetrahedra' must come before '" + key + "'");
    };
    if (key == "triangulation") {
      r.arity(1, 1);
      once(have_name);
      t.name = r.text(1);
    } else if (key == "tetrahedra") {
      r.arity(1, 1);
      if (tets >= 0) r.error(0, "duplicate 'tetrahedra' line");
      tets = static_cast<int>(r.integer(1));
      if (tets <= 0) r.error(1, "tetrahedron count must be positive");
      t.neighbors.assign(tets, {});
      t.gluings.assign(tets, {});
      t.shapes.assign(tets, {});
      tet_seen.assign(tets, false);
      shape_seen.assign(tets, false);
    } else if (key == "cusps") {
      r.arity(1, 1);
      once(have_cusps);
      t.cusps = static_cast<int>(r.integer(1));
      if (t.cusps < 0) r.error(1, "cusp count must be non-negative");
    } else if (key == "tet") {
      need_count();
      r.arity(9, 9);
      int i = static_cast<int>(r.index(1, tets, "tetrahedron"));
      if (tet_seen[i]) r.error(1, "duplicate gluing for tetrahedron " + std::to_string(i));
      tet_seen[i] = true;
      for (int f = 0; f < 4; ++f) {
        t.neighbors[i][f] = static_cast<int>(r.index(2 + f, tets, "neighbour"));
        const auto& perm = r.text(6 + f);
        if (perm.size() != 4) r.error(6 + f, "permutation must be four digits, got '" + perm + "'");
        for (int v = 0; v < 4; ++v) {
          if (perm[v] < '0' || perm[v] > '3') r.error(6 + f, "permutation digit must be 0-3 in '" + perm + "'");
          t.gluings[i][f][v] = perm[v] - '0';
        }
      }
    } else if (key == "shape") {
      need_count();
      r.arity(3, 3);
      int i = static_cast<int>(r.index(1, tets, "tetrahedron"));
      if (shape_seen[i]) r.error(1, "duplicate shape for tetrahedron " + std::to_string(i));
      shape_seen[i] = true;
      t.shapes[i] = r.complex(2);
    } else if (key == "delta") {
      r.arity(1, 1);
      once(have_delta);
      t.delta = r.number(1);
      if (t.delta.lo() < 0) r.error(1, "delta must be non-negative");
    } else {
      r.error(0, "unknown keyword '" + key + "'");
    }
  }
  if (!have_name) file_error(source, "missing 'triangulation' line");
  if (tets < 0) file_error(source, "missing 'tetrahedra' line");
  if (!have_cusps) file_error(source, "missing 'cusps' line");
  for (int i = 0; i < tets; ++i) {
    if (!tet_seen[i]) file_error(source, "missing gluing for tetrahedron " + std::to_string(i));
    if (!shape_seen[i]) file_error(source, "missing shape for tetrahedron " + std::to_string(i));
  }
  try {
    check_triangulation(t);
  } catch (const Error& e) {
    fail(e.kind(), source + ": " + e.what());
  }
  return t;
}

std::string serialize_triangulation(const Triangulation& t) {
  std::ostringstream out;
  const int n = static_cast<int>(t.neighbors.size());
  out << "triangulation " << t.name << "\ntetrahedra " << n << "\ncusps " << t.cusps << "\n";
  for (int i = 0; i < n; ++i) {
    out << "tet " << i;
    for (int f = 0; f < 4; ++f) out << ' ' << t.neighbors[i][f];
    for (int f = 0; f < 4; ++f) {
      out << ' ';
      for (int v : t.gluings[i][f]) out << v;
    }
    out << '\n';
  }
  for (int i = 0; i < n; ++i) out << "shape " << i << ' ' << complex_fields(t.shapes[i]) << '\n';
  out << "delta " << format_number(t.delta) << '\n';
  return out.str();
}

CuspDiagram parse_diagram(const std::string& text, const std::string& source) {
  std::optional<CuspLattice> lattice;
  std::vector<DiagramBall> balls;
  std::vector<DeclaredPair> pairs;
  std::vector<DiagramSymmetry> symmetries;
  for (const auto& line : split_lines(text)) {
    Reader r(source, line);
    const auto& key = r.keyword();
    if (key == "lattice") {
      r.arity(4, 4);
      if (lattice) r.error(0, "duplicate 'lattice' line");
      try {
        lattice = CuspLattice(r.complex(1), r.complex(3));
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Parse) throw;
        r.error(1, e.what(), e.kind());
      }
    } else if (key == "ball") {
      r.arity(3, 4);
      DiagramBall b{r.complex(1), r.number(3), std::nullopt};
      if (r.size() == 5) b.label = static_cast<int>(r.integer(4));
      balls.push_back(b);
    } else if (key == "pair") {
      r.arity(5, 5);
      pairs.push_back({static_cast<int>(r.integer(1)), static_cast<int>(r.integer(2)), r.integer(3), r.integer(4),
                       static_cast<int>(r.integer(5))});
    } else if (key == "symmetry") {
      r.arity(4, 4);
      symmetries.push_back({r.complex(1), r.complex(3)});
    } else {
      r.error(0, "unknown keyword '" + key + "'");
    }
  }
  if (!lattice) file_error(source, "missing 'lattice' line");
  try {
    return CuspDiagram(*lattice, balls, pairs, symmetries);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Precondition) throw;
    fail(ErrorKind::Structural, source + ": " + e.what());
  }
}

std::string serialize_diagram(const CuspDiagram& d) {
  std::ostringstream out;
  out << "lattice " << complex_fields(d.lattice().mu()) << ' ' << complex_fields(d.lattice().lambda()) << '\n';
  for (const auto& b : d.balls()) {
    out << "ball " << complex_fields(b.center) << ' ' << format_number(b.diameter);
    if (b.label) out << ' ' << *b.label;
    out << '\n';
  }
  for (const auto& p : d.pairs())
    out << "pair " << p.first << ' ' << p.second << ' ' << p.p << ' ' << p.q << ' ' << p.label << '\n';
  for (const auto& s : d.symmetries())
    out << "symmetry " << complex_fields(s.rotation) << ' ' << complex_fields(s.shift) << '\n';
  return out.str();
}

CuspLattice parse_cusp_shape(const std::string& text, const std::string& source) {
  std::optional<CuspLattice> shape;
  for (const auto& line : split_lines(text)) {
    Reader r(source, line);
    if (r.keyword() != "cusp") r.error(0, "unknown keyword '" + r.keyword() + "'");
    r.arity(4, 4);
    if (shape) r.error(0, "duplicate 'cusp' line");
    try {
      shape = CuspLattice(r.complex(1), r.complex(3));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Parse) throw;
      r.error(1, e.what(), e.kind());
    }
  }
  if (!shape) file_error(source, "missing 'cusp' line");
  return *shape;
}

std::string serialize_cusp_shape(const CuspLattice& c) {
  return "cusp " + complex_fields(c.mu()) + " " + complex_fields(c.lambda()) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, path + ": cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace momtech
