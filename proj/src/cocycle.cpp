#include "cocycle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cdual {

int TwoCocycle::pos_of(int point_index) const {
  auto it = std::lower_bound(H.begin(), H.end(), point_index);
  if (it == H.end() || *it != point_index) fail("element outside cocycle domain");
  return int(it - H.begin());
}

bool TwoCocycle::exact() const {
  for (const auto& t : table)
    if (!t.exact()) return false;
  return true;
}

void TwoCocycle::check_valid(double tol) const {
  int n = hsize();
  bool ex = exact();
  auto same = [&](const Turn& a, const Turn& b) {
    return ex ? same_turn(a, b) : same_turn(a, b, tol);
  };
  for (int i = 0; i < n; ++i) {
    if (!same(at(H[i], 0), Turn()) || !same(at(0, H[i]), Turn()))
      fail("cocycle not normalized");
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        int x = H[i], y = H[j], z = H[k];
        Turn lhs = at(point->mult[x][y], z).mul(at(x, y));
        Turn rhs = at(x, point->mult[y][z]).mul(at(y, z));
        if (!same(lhs, rhs)) fail("cocycle law fails");
      }
  }
}

bool TwoCocycle::is_equalized() const {
  for (int h : H)
    if (!at(h, point->inv[h]).is_one()) return false;
  return true;
}

TwoCocycle TwoCocycle::mul(const TwoCocycle& o) const {
  if (H != o.H) fail("cocycle product: domains differ");
  TwoCocycle r = *this;
  for (size_t i = 0; i < table.size(); ++i) r.table[i] = table[i].mul(o.table[i]);
  return r;
}

TwoCocycle TwoCocycle::inverse() const {
  TwoCocycle r = *this;
  for (auto& t : r.table) t = t.conj();
  return r;
}

TwoCocycle TwoCocycle::restricted(const std::vector<int>& sub) const {
  TwoCocycle r;
  r.point = point;
  r.H = sub;
  r.table.resize(sub.size() * sub.size());
  for (size_t i = 0; i < sub.size(); ++i)
    for (size_t j = 0; j < sub.size(); ++j)
      r.table[i * sub.size() + j] = at(sub[i], sub[j]);
  return r;
}

const Turn& NormalizedFunction::at(int point_index) const {
  auto it = std::lower_bound(H.begin(), H.end(), point_index);
  if (it == H.end() || *it != point_index) fail("element outside function domain");
  return values[it - H.begin()];
}

bool NormalizedFunction::exact() const {
  for (const auto& t : values)
    if (!t.exact()) return false;
  return true;
}

void check_subgroup(const PointGroup& pg, const std::vector<int>& H) {
  if (H.empty() || H[0] != 0) fail("subgroup must contain the identity");
  if (!std::is_sorted(H.begin(), H.end())) fail("subgroup indices must be ascending");
  std::set<int> s(H.begin(), H.end());
  for (int h : H) {
    if (!s.count(pg.inv[h])) fail("subgroup not closed under inverse");
    for (int k : H)
      if (!s.count(pg.mult[h][k])) fail("subgroup not closed under product");
  }
}

TwoCocycle omega_chi(const CrystalGroup& g, const Character& chi,
                     const std::vector<int>& H) {
  check_subgroup(g.point, H);
  OrbitData od = g.orbit_stabilizer(chi);
  for (int h : H)
    if (!std::binary_search(od.stabilizer.begin(), od.stabilizer.end(), h))
      fail("cocycle undefined off stabilizer");
  TwoCocycle w;
  w.point = &g.point;
  w.H = H;
  w.table.resize(H.size() * H.size());
  for (size_t i = 0; i < H.size(); ++i)
    for (size_t j = 0; j < H.size(); ++j)
      w.table[i * H.size() + j] = chi.eval(g.factor_set(H[i], H[j])).conj();
  w.check_valid();
  return w;
}

TwoCocycle coboundary(const NormalizedFunction& rho) {
  TwoCocycle w;
  w.point = rho.point;
  w.H = rho.H;
  size_t n = rho.H.size();
  w.table.resize(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      int xy = rho.point->mult[rho.H[i]][rho.H[j]];
      w.table[i * n + j] = rho.at(xy).div(rho.values[i].mul(rho.values[j]));
    }
  w.check_valid();
  return w;
}

Equalized equalize(const TwoCocycle& omega) {
  Equalized out;
  out.eq.point = omega.point;
  out.eq.H = omega.H;
  out.eq.values.resize(omega.H.size());
  for (size_t i = 0; i < omega.H.size(); ++i) {
    int h = omega.H[i];
    out.eq.values[i] = omega.at(h, omega.point->inv[h]).sqrt_principal();
  }
  out.omega_eq = omega.mul(coboundary(out.eq));
  if (!out.omega_eq.is_equalized()) fail("equalize postcondition failed");
  return out;
}

Finitized finitize(const TwoCocycle& omega_eq) {
  if (!omega_eq.exact()) fail("finitization requires exact character");
  if (!omega_eq.is_equalized()) fail("finitize: input not equalized");
  int n = omega_eq.hsize();
  const PointGroup& pg = *omega_eq.point;

  // rho(k) = prod_h omega(h,k); equalized input forces rho(k) = rho(k^{-1})
  std::vector<Turn> rho(n);
  for (int j = 0; j < n; ++j) {
    Turn r;
    for (int i = 0; i < n; ++i) r = r.mul(omega_eq.at_pos(i, j));
    rho[j] = r;
  }
  for (int j = 0; j < n; ++j) {
    int invpos = omega_eq.pos_of(pg.inv[omega_eq.H[j]]);
    if (!same_turn(rho[j], rho[invpos]))
      fail("finitize: rho(k) != rho(k^-1) on an equalized cocycle");
  }

  Finitized out;
  out.n = n;
  out.fin.point = omega_eq.point;
  out.fin.H = omega_eq.H;
  out.fin.values.assign(n, Turn());
  Turn minus_one = Turn::rational(1, 2);
  std::vector<bool> done(n, false);
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    int h = omega_eq.H[i];
    int ip = omega_eq.pos_of(pg.inv[h]);
    if (ip == i) {
      out.fin.values[i] = Turn();  // involutive case
      done[i] = true;
    } else if (same_turn(rho[i], minus_one) && same_turn(rho[ip], minus_one)) {
      // ordered pair (h, h^{-1}) by ascending element index
      int lo = std::min(i, ip), hi = std::max(i, ip);
      out.fin.values[lo] = Turn::rational(1, 2 * std::int64_t(n));
      out.fin.values[hi] = Turn::rational(-1, 2 * std::int64_t(n));
      done[i] = done[ip] = true;
    } else {
      // remaining case: principal n-th root of rho
      out.fin.values[i] = rho[i].nth_root_principal(n);
      out.fin.values[ip] = rho[ip].nth_root_principal(n);
      done[i] = done[ip] = true;
    }
  }

  out.omega_fin = omega_eq.mul(coboundary(out.fin).inverse());
  for (const auto& t : out.omega_fin.table)
    if (!t.is_nth_root(n)) fail("finitize postcondition: value outside Z_n");
  if (!out.omega_fin.is_equalized()) fail("finitize postcondition: not equalized");
  out.omega_fin.check_valid();
  return out;
}

// ---- cohomologous witness via Smith normal form over the integers ----

namespace {

struct Snf {
  // U * B * V = S with S diagonal (diag entries s[0..rank)), U, V unimodular
  std::vector<std::vector<std::int64_t>> U, V;
  std::vector<std::int64_t> s;
  int rank = 0;
  int rows = 0, cols = 0;
};

Snf smith_normal_form(std::vector<std::vector<std::int64_t>> B) {
  Snf out;
  int m = int(B.size()), n = int(B[0].size());
  out.rows = m;
  out.cols = n;
  out.U.assign(m, std::vector<std::int64_t>(m, 0));
  out.V.assign(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < m; ++i) out.U[i][i] = 1;
  for (int j = 0; j < n; ++j) out.V[j][j] = 1;

  auto row_op = [&](int i1, int i2, std::int64_t q) {  // row i2 -= q * row i1
    for (int j = 0; j < n; ++j) B[i2][j] -= q * B[i1][j];
    for (int j = 0; j < m; ++j) out.U[i2][j] -= q * out.U[i1][j];
  };
  auto col_op = [&](int j1, int j2, std::int64_t q) {  // col j2 -= q * col j1
    for (int i = 0; i < m; ++i) B[i][j2] -= q * B[i][j1];
    for (int i = 0; i < n; ++i) out.V[i][j2] -= q * out.V[i][j1];
  };
  auto row_swap = [&](int i1, int i2) {
    std::swap(B[i1], B[i2]);
    std::swap(out.U[i1], out.U[i2]);
  };
  auto col_swap = [&](int j1, int j2) {
    for (int i = 0; i < m; ++i) std::swap(B[i][j1], B[i][j2]);
    for (int i = 0; i < n; ++i) std::swap(out.V[i][j1], out.V[i][j2]);
  };

  int t = 0;
  while (t < m && t < n) {
    // find nonzero pivot with minimal |value|
    int pi = -1, pj = -1;
    std::int64_t best = 0;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (B[i][j] != 0 && (pi < 0 || std::llabs(B[i][j]) < best)) {
          best = std::llabs(B[i][j]);
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    row_swap(t, pi);
    col_swap(t, pj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < m; ++i)
        if (B[i][t] != 0) {
          std::int64_t q = B[i][t] / B[t][t];
          row_op(t, i, q);
          if (B[i][t] != 0) { row_swap(t, i); clean = false; }
        }
      for (int j = t + 1; j < n; ++j)
        if (B[t][j] != 0) {
          std::int64_t q = B[t][j] / B[t][t];
          col_op(t, j, q);
          if (B[t][j] != 0) { col_swap(t, j); clean = false; }
        }
    }
    if (B[t][t] < 0) {
      for (int j = 0; j < n; ++j) B[t][j] = -B[t][j];
      for (int j = 0; j < m; ++j) out.U[t][j] = -out.U[t][j];
    }
    ++t;
  }
  // divisibility chain is not needed for solvability, skip it
  out.rank = t;
  out.s.resize(t);
  for (int i = 0; i < t; ++i) out.s[i] = B[i][i];
  return out;
}

// coboundary relation matrix for H: one row per (x,y), columns over H,
// encoding f(xy) - f(x) - f(y)
std::vector<std::vector<std::int64_t>> coboundary_matrix(const PointGroup& pg,
                                                         const std::vector<int>& H) {
  int n = int(H.size());
  std::map<int, int> pos;
  for (int i = 0; i < n; ++i) pos[H[i]] = i;
  std::vector<std::vector<std::int64_t>> B;
  B.reserve(size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<std::int64_t> row(n, 0);
      row[pos[pg.mult[H[i]][H[j]]]] += 1;
      row[pos[H[i]]] -= 1;
      row[pos[H[j]]] -= 1;
      B.push_back(std::move(row));
    }
  return B;
}

Snf snf_for(const PointGroup& pg, const std::vector<int>& H) {
  // recomputed per call; the matrices are tiny and this keeps the solver pure
  return smith_normal_form(coboundary_matrix(pg, H));
}

}  // namespace

std::optional<NormalizedFunction> cohomologous_witness(const TwoCocycle& w1,
                                                       const TwoCocycle& w2) {
  if (w1.H != w2.H) fail("witness: cocycle domains differ");
  if (!w1.exact() || !w2.exact()) fail("witness requires exact cocycles");
  const PointGroup& pg = *w1.point;
  int n = w1.hsize();
  const Snf snf = snf_for(pg, w1.H);

  // rhs w(x,y) = turn(w1 * conj(w2)) as rationals
  std::vector<Frac> w;
  w.reserve(size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      w.push_back(w1.at_pos(i, j).div(w2.at_pos(i, j)).frac());

  // transform rhs: w' = U w; solvable iff w'_i integral for i >= rank
  std::vector<Frac> wp(snf.rows, Frac(0));
  for (int i = 0; i < snf.rows; ++i) {
    Frac acc(0);
    for (int j = 0; j < snf.rows; ++j)
      if (snf.U[i][j] != 0) acc = acc + Frac(snf.U[i][j]) * w[j];
    wp[i] = acc;
  }
  for (int i = snf.rank; i < snf.rows; ++i)
    if (!wp[i].is_integer()) return std::nullopt;

  // canonical solution g_i = w'_i / s_i (i < rank), f = V g
  std::vector<Frac> gsol(snf.cols, Frac(0));
  for (int i = 0; i < snf.rank; ++i) gsol[i] = wp[i] / Frac(snf.s[i]);
  NormalizedFunction lam;
  lam.point = w1.point;
  lam.H = w1.H;
  lam.values.resize(n);
  for (int i = 0; i < n; ++i) {
    Frac acc(0);
    for (int j = 0; j < snf.cols; ++j)
      if (snf.V[i][j] != 0) acc = acc + Frac(snf.V[i][j]) * gsol[j];
    lam.values[i] = Turn::from_frac(acc);
  }
  if (!lam.values[0].is_one()) fail("witness: solution not normalized");

  // verify by substitution
  TwoCocycle tau = coboundary(lam);
  TwoCocycle target = w1.mul(w2.inverse());
  for (size_t i = 0; i < tau.table.size(); ++i)
    if (!same_turn(tau.table[i], target.table[i])) fail("witness verification failed");
  return lam;
}

std::vector<NormalizedFunction> witness_adjusters(const PointGroup& pg,
                                                  const std::vector<int>& H) {
  const Snf snf = snf_for(pg, H);
  int n = int(H.size());
  std::vector<int> free_idx;
  for (int i = 0; i < snf.rank; ++i)
    if (snf.s[i] > 1) free_idx.push_back(i);

  std::vector<NormalizedFunction> out;
  std::vector<std::string> seen;
  std::vector<int> counter(free_idx.size(), 0);
  while (true) {
    std::vector<Frac> gsol(snf.cols, Frac(0));
    for (size_t k = 0; k < free_idx.size(); ++k)
      gsol[free_idx[k]] = Frac(counter[k], snf.s[free_idx[k]]);
    NormalizedFunction lam;
    lam.point = &pg;
    lam.H = H;
    lam.values.resize(n);
    std::string key;
    for (int i = 0; i < n; ++i) {
      Frac acc(0);
      for (int j = 0; j < snf.cols; ++j)
        if (snf.V[i][j] != 0) acc = acc + Frac(snf.V[i][j]) * gsol[j];
      lam.values[i] = Turn::from_frac(acc);
      key += lam.values[i].str() + ";";
    }
    if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
      seen.push_back(key);
      out.push_back(std::move(lam));
    }
    // advance the mixed-radix counter
    size_t k = 0;
    for (; k < free_idx.size(); ++k) {
      if (++counter[k] < snf.s[free_idx[k]]) break;
      counter[k] = 0;
    }
    if (k == free_idx.size()) break;
  }
  return out;
}

}  // namespace cdual
