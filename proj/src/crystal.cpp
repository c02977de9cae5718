#include "crystal.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace cdual {

namespace {

IntVec mat_vec(const IntMat& m, const IntVec& v) {
  int r = int(m.size());
  IntVec out(r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out[i] += m[i][j] * v[j];
  return out;
}

std::vector<Frac> mat_fvec(const IntMat& m, const std::vector<Frac>& v) {
  int r = int(m.size());
  std::vector<Frac> out(r, Frac(0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out[i] = out[i] + Frac(m[i][j]) * v[j];
  return out;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  int r = int(a.size());
  IntMat out(r, IntVec(r, 0));
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k)
      for (int j = 0; j < r; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

std::int64_t mat_det(IntMat m) {
  // fraction-free Gaussian elimination (Bareiss)
  int n = int(m.size());
  std::int64_t prev = 1;
  std::int64_t sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) { piv = i; break; }
      if (piv < 0) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

int PointGroup::index_of(const std::string& name) const {
  for (int i = 0; i < order; ++i)
    if (names[i] == name) return i;
  fail("unknown point-group element '" + name + "'");
}

void PointGroup::validate(int dim) const {
  if (order < 1 || int(names.size()) != order) fail("point group: bad element list");
  if (int(mult.size()) != order) fail("point group: bad mult table");
  for (int h = 0; h < order; ++h) {
    if (int(mult[h].size()) != order) fail("point group: bad mult row '" + names[h] + "'");
    if (mult[0][h] != h || mult[h][0] != h)
      fail("point group: element 0 is not the identity (row '" + names[h] + "')");
  }
  for (int h = 0; h < order; ++h) {
    if (mult[h][inv[h]] != 0 || mult[inv[h]][h] != 0)
      fail("point group: bad inverse for '" + names[h] + "'");
    for (int k = 0; k < order; ++k)
      for (int l = 0; l < order; ++l)
        if (mult[mult[h][k]][l] != mult[h][mult[k][l]])
          fail("point group: associativity fails at (" + names[h] + "," + names[k] +
               "," + names[l] + ")");
  }
  if (int(action.size()) != order) fail("point group: action matrix count");
  for (int d = 0; d < order; ++d) {
    if (int(action[d].size()) != dim) fail("point group: action '" + names[d] + "' shape");
    std::int64_t det = mat_det(action[d]);
    if (det != 1 && det != -1)
      fail("point group: action '" + names[d] + "' is not in GL(Z) (det " +
           std::to_string(det) + ")");
  }
  for (int h = 0; h < order; ++h)
    for (int k = 0; k < order; ++k)
      if (mat_mul(action[h], action[k]) != action[mult[h][k]])
        fail("point group: action is not a homomorphism at (" + names[h] + "," +
             names[k] + ")");
}

bool Character::exact() const {
  for (const auto& t : u)
    if (!t.exact()) return false;
  return true;
}

Turn Character::eval(const IntVec& m) const {
  Turn out;
  for (size_t j = 0; j < u.size(); ++j) out = out.mul(u[j].pow(m[j]));
  return out;
}

bool Character::same(const Character& o, double tol) const {
  if (u.size() != o.u.size()) return false;
  for (size_t j = 0; j < u.size(); ++j)
    if (!same_turn(u[j], o.u[j], tol)) return false;
  return true;
}

std::string Character::str() const {
  std::string s = "(";
  for (size_t j = 0; j < u.size(); ++j) {
    if (j) s += ",";
    s += u[j].str();
  }
  return s + ")";
}

// ---- CrystalGroup ----

GElement CrystalGroup::identity() const { return GElement{IntVec(dim, 0), 0}; }

GElement CrystalGroup::lattice(const IntVec& m) const { return GElement{m, 0}; }

GElement CrystalGroup::sect(int d) const { return GElement{IntVec(dim, 0), d}; }

GElement CrystalGroup::mul(const GElement& x, const GElement& y) const {
  // i(n1)g(d1) i(n2)g(d2) = i(n1 + M_{d1} n2 + nu_left(d1,d2)) g(d1 d2)
  GElement out;
  out.d = point.mult[x.d][y.d];
  out.n = mat_vec(point.action[x.d], y.n);
  for (int j = 0; j < dim; ++j) out.n[j] += x.n[j] + nu_left[x.d][y.d][j];
  return out;
}

GElement CrystalGroup::inv(const GElement& x) const {
  int di = point.inv[x.d];
  GElement out;
  out.d = di;
  IntVec tmp(dim);
  for (int j = 0; j < dim; ++j) tmp[j] = x.n[j] + nu_left[x.d][di][j];
  out.n = mat_vec(point.action_inv[x.d], tmp);
  for (int j = 0; j < dim; ++j) out.n[j] = -out.n[j];
  return out;
}

bool CrystalGroup::equal(const GElement& x, const GElement& y) const {
  return x.d == y.d && x.n == y.n;
}

GElement CrystalGroup::eval_word(const std::vector<std::pair<int, int>>& word) const {
  GElement out = identity();
  for (auto [gi, p] : word) {
    const GElement& g = generators[gi].g;
    GElement gp = p >= 0 ? g : inv(g);
    for (int i = 0; i < std::abs(p); ++i) out = mul(out, gp);
  }
  return out;
}

IntVec CrystalGroup::factor_set(int h, int k) const {
  // nu(h,k) = gamma(hk)^{-1} gamma(h) gamma(k) = M_{hk}^{-1} nu_left(h,k)
  return mat_vec(point.action_inv[point.mult[h][k]], nu_left[h][k]);
}

Character CrystalGroup::dual_action(int d, const Character& chi) const {
  // (d.chi)(m) = chi(M_d^{-1} m), so coordinates map by the transpose
  Character out;
  out.u.resize(dim);
  const IntMat& mi = point.action_inv[d];
  for (int j = 0; j < dim; ++j) {
    Turn t;
    for (int i = 0; i < dim; ++i) t = t.mul(chi.u[i].pow(mi[i][j]));
    out.u[j] = t;
  }
  return out;
}

OrbitData CrystalGroup::orbit_stabilizer(const Character& chi) const {
  OrbitData od;
  std::vector<Character> images;
  images.reserve(point.order);
  for (int d = 0; d < point.order; ++d) {
    Character c = dual_action(d, chi);
    if (c.same(chi)) od.stabilizer.push_back(d);
    images.push_back(std::move(c));
  }
  for (int d = 0; d < point.order; ++d) {
    bool seen = false;
    for (int r : od.transversal)
      if (images[r].same(images[d])) { seen = true; break; }
    if (!seen) {
      od.transversal.push_back(d);
      od.orbit.push_back(images[d]);
    }
  }
  if (int(od.orbit.size() * od.stabilizer.size()) != point.order)
    fail("orbit-stabilizer count mismatch for " + chi.str());
  return od;
}

void CrystalGroup::validate() const {
  point.validate(dim);
  if (int(section.size()) != point.order) fail("section: one translation per element required");
  for (const auto& f : section[0])
    if (f.num != 0) fail("section: gamma(identity) must be the identity");
  // nu_left integral is established at construction; re-check the cached table
  for (int h = 0; h < point.order; ++h)
    for (int k = 0; k < point.order; ++k) {
      if (int(nu_left[h][k].size()) != dim) fail("factor set table shape");
      if (h == 0 || k == 0)
        for (auto v : nu_left[h][k])
          if (v != 0) fail("factor set not normalized at identity");
    }
  // relator chain: every word evaluates to one common element
  if (!relator_words.empty()) {
    GElement first = eval_word(relator_words[0]);
    for (size_t i = 1; i < relator_words.size(); ++i)
      if (!equal(eval_word(relator_words[i]), first))
        fail("relator chain: word " + std::to_string(i + 1) +
             " differs from word 1");
  }
  // n-generator words must reproduce the standard lattice basis in order
  for (size_t i = 0; i < n_generator_words.size(); ++i) {
    GElement g = eval_word(n_generator_words[i]);
    IntVec want(dim, 0);
    want[i] = 1;
    if (g.d != 0 || g.n != want)
      fail("n_generators: word " + std::to_string(i + 1) +
           " does not equal lattice basis vector e" + std::to_string(i + 1));
  }
}

// ---- datum parsing ----

namespace {

struct Line {
  int no;
  std::string text;
};

[[noreturn]] void fail_at(int line_no, const std::string& msg) {
  fail("line " + std::to_string(line_no) + ": " + msg);
}

std::vector<std::string> tokens_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::vector<std::pair<int, int>> parse_word(const CrystalGroup& g,
                                            const std::string& text, int line_no) {
  std::vector<std::pair<int, int>> word;
  for (const auto& tok : tokens_of(text)) {
    std::string name = tok;
    int p = 1;
    size_t caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      try {
        p = std::stoi(tok.substr(caret + 1));
      } catch (const std::logic_error&) {
        fail_at(line_no, "bad power in token '" + tok + "'");
      }
    }
    int gi = -1;
    for (size_t i = 0; i < g.generators.size(); ++i)
      if (g.generators[i].name == name) { gi = int(i); break; }
    if (gi < 0) fail_at(line_no, "unknown generator '" + name + "'");
    word.emplace_back(gi, p);
  }
  if (word.empty()) fail_at(line_no, "empty word");
  return word;
}

}  // namespace

CrystalGroup parse_group_datum(const std::string& text) {
  std::vector<Line> lines;
  {
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
      ++no;
      size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      while (!raw.empty() && (raw.back() == ' ' || raw.back() == '\t' || raw.back() == '\r'))
        raw.pop_back();
      size_t start = raw.find_first_not_of(" \t");
      if (start == std::string::npos) continue;
      lines.push_back({no, raw.substr(start)});
    }
  }

  CrystalGroup g;
  std::map<std::string, std::vector<Line>> sections;
  std::string current;
  std::vector<Line> preamble;
  for (const auto& ln : lines) {
    if (ln.text.front() == '[') {
      size_t close = ln.text.find(']');
      if (close == std::string::npos) fail_at(ln.no, "unterminated section header");
      current = ln.text.substr(1, close - 1);
      if (sections.count(current)) fail_at(ln.no, "duplicate section [" + current + "]");
      sections[current] = {};
    } else if (current.empty()) {
      preamble.push_back(ln);
    } else {
      sections[current].push_back(ln);
    }
  }

  for (const auto& ln : preamble) {
    auto eq = ln.text.find('=');
    if (eq == std::string::npos) fail_at(ln.no, "expected 'key = value'");
    auto key = tokens_of(ln.text.substr(0, eq));
    auto vals = tokens_of(ln.text.substr(eq + 1));
    if (key.size() != 1) fail_at(ln.no, "bad key");
    if (key[0] == "dim") {
      if (vals.size() != 1) fail_at(ln.no, "dim wants one integer");
      g.dim = std::stoi(vals[0]);
      if (g.dim < 1) fail_at(ln.no, "dim must be positive");
    } else if (key[0] == "elements") {
      g.point.names = vals;
      g.point.order = int(vals.size());
      for (size_t i = 0; i < vals.size(); ++i)
        for (size_t j = i + 1; j < vals.size(); ++j)
          if (vals[i] == vals[j])
            fail_at(ln.no, "duplicate element label '" + vals[i] + "'");
    } else {
      fail_at(ln.no, "unknown key '" + key[0] + "'");
    }
  }
  if (g.dim == 0) fail("missing 'dim'");
  if (g.point.order == 0) fail("missing 'elements'");

  auto need = [&](const std::string& name) -> const std::vector<Line>& {
    auto it = sections.find(name);
    if (it == sections.end()) fail("missing section [" + name + "]");
    return it->second;
  };

  // mult table
  {
    const auto& rows = need("mult");
    if (int(rows.size()) != g.point.order)
      fail("mult: expected " + std::to_string(g.point.order) + " rows");
    g.point.mult.assign(g.point.order, std::vector<int>(g.point.order));
    for (int h = 0; h < g.point.order; ++h) {
      auto toks = tokens_of(rows[h].text);
      if (int(toks.size()) != g.point.order) fail_at(rows[h].no, "mult row arity");
      for (int k = 0; k < g.point.order; ++k) {
        auto it = std::find(g.point.names.begin(), g.point.names.end(), toks[k]);
        if (it == g.point.names.end()) fail_at(rows[h].no, "unknown label '" + toks[k] + "'");
        g.point.mult[h][k] = int(it - g.point.names.begin());
      }
    }
  }
  // inverse table: derive, then check optional section
  g.point.inv.assign(g.point.order, -1);
  for (int h = 0; h < g.point.order; ++h)
    for (int k = 0; k < g.point.order; ++k)
      if (g.point.mult[h][k] == 0) g.point.inv[h] = k;
  if (sections.count("inverse")) {
    const auto& rows = sections["inverse"];
    if (rows.size() != 1) fail("inverse: expected one row");
    auto toks = tokens_of(rows[0].text);
    if (int(toks.size()) != g.point.order) fail_at(rows[0].no, "inverse row arity");
    for (int h = 0; h < g.point.order; ++h)
      if (toks[h] != g.point.names[g.point.inv[h]])
        fail_at(rows[0].no, "inverse of '" + g.point.names[h] + "' disagrees with mult table");
  }

  // action + section per element
  g.point.action.resize(g.point.order);
  g.section.resize(g.point.order);
  for (int d = 0; d < g.point.order; ++d) {
    const auto& rows = need("action " + g.point.names[d]);
    if (int(rows.size()) != g.dim)
      fail("action " + g.point.names[d] + ": expected " + std::to_string(g.dim) + " rows");
    IntMat m(g.dim, IntVec(g.dim));
    for (int i = 0; i < g.dim; ++i) {
      auto toks = tokens_of(rows[i].text);
      if (int(toks.size()) != g.dim) fail_at(rows[i].no, "action row arity");
      for (int j = 0; j < g.dim; ++j) {
        try {
          m[i][j] = std::stoll(toks[j]);
        } catch (const std::logic_error&) {
          fail_at(rows[i].no, "bad integer '" + toks[j] + "'");
        }
      }
    }
    g.point.action[d] = std::move(m);

    const auto& srows = need("section " + g.point.names[d]);
    if (srows.size() != 1) fail("section " + g.point.names[d] + ": expected one row");
    auto toks = tokens_of(srows[0].text);
    if (int(toks.size()) != g.dim) fail_at(srows[0].no, "section row arity");
    std::vector<Frac> t(g.dim);
    for (int j = 0; j < g.dim; ++j) {
      try {
        t[j] = Frac::parse(toks[j]);
      } catch (const std::exception& e) {
        fail_at(srows[0].no, e.what());
      }
    }
    g.section[d] = std::move(t);
  }

  // derived inverse action matrices: M_{d^{-1}}
  g.point.action_inv.resize(g.point.order);
  for (int d = 0; d < g.point.order; ++d)
    g.point.action_inv[d] = g.point.action[g.point.inv[d]];

  // group-table and action validation must precede the factor-set build so
  // table errors surface as such
  g.point.validate(g.dim);

  // nu_left(h,k) = t_h + M_h t_k - t_{hk}; must be integral
  g.nu_left.assign(g.point.order, std::vector<IntVec>(g.point.order));
  for (int h = 0; h < g.point.order; ++h)
    for (int k = 0; k < g.point.order; ++k) {
      auto v = mat_fvec(g.point.action[h], g.section[k]);
      IntVec out(g.dim);
      for (int j = 0; j < g.dim; ++j) {
        Frac f = g.section[h][j] + v[j] - g.section[g.point.mult[h][k]][j];
        if (!f.is_integer())
          fail("invalid vector system: nu(" + g.point.names[h] + "," +
               g.point.names[k] + ") leaves the lattice");
        out[j] = f.num;
      }
      g.nu_left[h][k] = std::move(out);
    }

  // generators
  if (sections.count("generators")) {
    for (const auto& ln : sections["generators"]) {
      auto eq = ln.text.find('=');
      if (eq == std::string::npos) fail_at(ln.no, "expected 'name = point <label>' or 'name = lattice <ints>'");
      auto lhs = tokens_of(ln.text.substr(0, eq));
      auto rhs = tokens_of(ln.text.substr(eq + 1));
      if (lhs.size() != 1 || rhs.size() < 2) fail_at(ln.no, "bad generator line");
      NamedGenerator ng;
      ng.name = lhs[0];
      if (rhs[0] == "point") {
        ng.g = g.sect(g.point.index_of(rhs[1]));
      } else if (rhs[0] == "lattice") {
        if (int(rhs.size()) != g.dim + 1) fail_at(ln.no, "lattice generator arity");
        IntVec m(g.dim);
        for (int j = 0; j < g.dim; ++j) m[j] = std::stoll(rhs[j + 1]);
        ng.g = g.lattice(m);
      } else {
        fail_at(ln.no, "generator kind must be 'point' or 'lattice'");
      }
      g.generators.push_back(std::move(ng));
    }
  }
  if (sections.count("relators"))
    for (const auto& ln : sections["relators"])
      g.relator_words.push_back(parse_word(g, ln.text, ln.no));
  if (sections.count("n_generators")) {
    for (const auto& ln : sections["n_generators"])
      g.n_generator_words.push_back(parse_word(g, ln.text, ln.no));
    if (int(g.n_generator_words.size()) != g.dim)
      fail("n_generators: expected " + std::to_string(g.dim) + " words");
  }

  g.validate();
  return g;
}

CrystalGroup load_group_datum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open group datum '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  CrystalGroup g = parse_group_datum(ss.str());
  if (ss.str() == g90_datum_text()) g.is_builtin_g90 = true;
  size_t slash = path.find_last_of("/\\");
  g.source_name = slash == std::string::npos ? path : path.substr(slash + 1);
  return g;
}

// ---- bundled group 90 ----

const std::string& g90_datum_text() {
  static const std::string text = R"(# Dimension-3 crystallographic group 90.
# Lattice basis: n1 = a b^2 a^-1, n2 = b^-2, n3 = c.
dim = 3
elements = e a a2 a3 b ab a2b a3b

[mult]
e a a2 a3 b ab a2b a3b
a a2 a3 e ab a2b a3b b
a2 a3 e a a2b a3b b ab
a3 e a a2 a3b b ab a2b
b a3b a2b ab e a3 a2 a
ab b a3b a2b a e a3 a2
a2b ab b a3b a2 a e a3
a3b a2b ab b a3 a2 a e

[inverse]
e a3 a2 a b ab a2b a3b

[action e]
1 0 0
0 1 0
0 0 1

[action a]
0 -1 0
1 0 0
0 0 1

[action a2]
-1 0 0
0 -1 0
0 0 1

[action a3]
0 1 0
-1 0 0
0 0 1

[action b]
-1 0 0
0 1 0
0 0 -1

[action ab]
0 -1 0
-1 0 0
0 0 -1

[action a2b]
1 0 0
0 -1 0
0 0 -1

[action a3b]
0 1 0
1 0 0
0 0 -1

[section e]
0 0 0

[section a]
-1/2 -1/2 0

[section a2]
0 -1 0

[section a3]
1/2 -1/2 0

[section b]
-1/2 -1/2 0

[section ab]
0 -1 0

[section a2b]
1/2 -1/2 0

[section a3b]
0 0 0

[generators]
a = point a
b = point b
c = lattice 0 0 1

[relators]
b^-1 a b^-1 a
a a a a
b^-1 c b c
c^-1 a^-1 c a
a^-2 b^-2 a^-2 b^-2

[n_generators]
a b^2 a^-1
b^-2
c
)";
  return text;
}

CrystalGroup builtin_g90() {
  CrystalGroup g = parse_group_datum(g90_datum_text());
  g.is_builtin_g90 = true;
  g.source_name = "g90-builtin";
  return g;
}

std::string classify_orbit_type_90(const CrystalGroup& g, const Character& chi) {
  if (!g.is_builtin_g90) fail("orbit-type classification is defined for the bundled group-90 datum only");
  auto is_one = [](const Turn& t) { return same_turn(t, Turn()); };
  auto is_m1 = [](const Turn& t) { return same_turn(t, Turn::rational(1, 2)); };
  auto is_pm = [&](const Turn& t) { return is_one(t) || is_m1(t); };
  const Turn& u1 = chi.u[0];
  const Turn& u2 = chi.u[1];
  const Turn& u3 = chi.u[2];
  bool eq12 = same_turn(u1, u2);
  bool opp12 = same_turn(u1, u2.mul(Turn::rational(1, 2)));
  bool conj12 = same_turn(u1, u2.conj());

  std::string label;
  if (is_one(u1) && is_one(u2) && is_pm(u3)) label = "1-T1";
  else if (is_m1(u1) && is_m1(u2) && is_pm(u3)) label = "1-T2";
  else if (is_one(u1) && is_m1(u2) && is_pm(u3)) label = "2-T1";
  else if (is_m1(u1) && is_one(u2) && is_pm(u3)) label = "2-T2";
  else if (is_pm(u1) && eq12 && !is_pm(u3)) label = "2-T3";
  else if (!is_pm(u1) && eq12 && is_pm(u3)) label = "4-T1";
  else if (!is_pm(u1) && conj12 && is_pm(u3)) label = "4-T2";
  else if (!is_pm(u1) && is_pm(u2) && is_pm(u3)) label = "4-T3";
  else if (is_pm(u1) && !is_pm(u2) && is_pm(u3)) label = "4-T4";
  else if (is_pm(u1) && opp12 && !is_pm(u3)) label = "4-T5";
  else label = "8";

  // label must agree with the actual orbit data
  OrbitData od = g.orbit_stabilizer(chi);
  size_t want = label == "8" ? 8 : size_t(label[0] - '0');
  if (od.orbit.size() != want)
    fail("orbit-type label " + label + " disagrees with orbit size " +
         std::to_string(od.orbit.size()) + " at " + chi.str());
  if (label != "8" && od.stabilizer != g90_type_stabilizer(label))
    fail("orbit-type label " + label + " disagrees with stabilizer at " + chi.str());
  return label;
}

std::vector<int> g90_type_stabilizer(const std::string& label) {
  // indices into {e,a,a2,a3,b,ab,a2b,a3b}
  if (label == "1-T1" || label == "1-T2") return {0, 1, 2, 3, 4, 5, 6, 7};
  if (label == "2-T1" || label == "2-T2") return {0, 2, 4, 6};  // D1
  if (label == "2-T3") return {0, 1, 2, 3};                     // D2
  if (label == "4-T1") return {0, 7};                           // D8
  if (label == "4-T2") return {0, 5};                           // D7
  if (label == "4-T3") return {0, 6};                           // D4
  if (label == "4-T4") return {0, 4};                           // D5
  if (label == "4-T5") return {0, 2};                           // D6
  if (label == "8") return {0};
  fail("unknown orbit-type label '" + label + "'");
}

}  // namespace cdual
