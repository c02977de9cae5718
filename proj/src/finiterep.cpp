#include "finiterep.hpp"

#include <algorithm>
#include <cmath>

#include "rng.hpp"

namespace cdual {

void FiniteGroup::validate() const {
  if (order < 1 || int(mult.size()) != order) fail("finite group: bad table");
  for (int h = 0; h < order; ++h) {
    if (mult[0][h] != h || mult[h][0] != h) fail("finite group: identity must be index 0");
    if (mult[h][inv[h]] != 0 || mult[inv[h]][h] != 0) fail("finite group: bad inverse");
  }
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y)
      for (int z = 0; z < order; ++z)
        if (mult[mult[x][y]][z] != mult[x][mult[y][z]])
          fail("finite group: associativity fails");
}

int FiniteGroup::conjugacy_class_count() const {
  std::vector<int> cls(order, -1);
  int count = 0;
  for (int x = 0; x < order; ++x) {
    if (cls[x] >= 0) continue;
    for (int g = 0; g < order; ++g) cls[mult[mult[g][x]][inv[g]]] = count;
    ++count;
  }
  return count;
}

void FiniteRep::check_valid(double tol) const {
  if (max_abs_diff(mats[0], CMatrix::identity(dim)) > tol)
    fail("rep: identity image is not I");
  for (int g = 0; g < group->order; ++g)
    if (!mats[g].is_unitary(tol)) fail("rep: non-unitary image");
  for (int g = 0; g < group->order; ++g)
    for (int h = 0; h < group->order; ++h)
      if (max_abs_diff(mats[group->mult[g][h]], mats[g].mul(mats[h])) > tol)
        fail("rep: multiplicativity fails");
}

std::vector<cplx> FiniteRep::character() const {
  std::vector<cplx> ch(group->order);
  for (int g = 0; g < group->order; ++g) ch[g] = mats[g].trace();
  return ch;
}

Extension build_extension(const std::vector<int>& H, const TwoCocycle& omega_fin,
                          int n) {
  if (int(H.size()) != n) fail("extension: n must equal |H|");
  if (omega_fin.H != H) fail("extension: cocycle domain mismatch");
  // integer exponents W with omega_fin(h,k) = exp(2 pi i W / n)
  std::vector<int> W(size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Turn& t = omega_fin.at_pos(i, j);
      if (!t.exact() || !t.is_nth_root(n)) fail("cocycle not finitized");
      Frac f = t.frac();
      W[size_t(i) * n + j] = int(f.num * (n / f.den));
    }

  Extension ext;
  ext.H = H;
  ext.n = n;
  FiniteGroup& fg = ext.group;
  fg.order = n * n;
  fg.labels.resize(fg.order);
  fg.mult.assign(fg.order, std::vector<int>(fg.order));
  fg.inv.resize(fg.order);
  const PointGroup& pg = *omega_fin.point;
  std::vector<int> pos(pg.order, -1);
  for (int i = 0; i < n; ++i) pos[H[i]] = i;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      fg.labels[ext.index_of(j, i)] =
          "(" + std::to_string(j) + "," + pg.names[H[i]] + ")";
  // (a1,h1)(a2,h2) = (a1 a2 omega(h1,h2)^{-1}, h1 h2): additive j1+j2-W
  for (int j1 = 0; j1 < n; ++j1)
    for (int i1 = 0; i1 < n; ++i1)
      for (int j2 = 0; j2 < n; ++j2)
        for (int i2 = 0; i2 < n; ++i2) {
          int jj = ((j1 + j2 - W[size_t(i1) * n + i2]) % n + n) % n;
          int hh = pos[pg.mult[H[i1]][H[i2]]];
          fg.mult[ext.index_of(j1, i1)][ext.index_of(j2, i2)] = ext.index_of(jj, hh);
        }
  for (int x = 0; x < fg.order; ++x)
    for (int y = 0; y < fg.order; ++y)
      if (fg.mult[x][y] == 0) fg.inv[x] = y;
  fg.validate();
  // the central factor must commute with everything
  for (int j = 1; j < n; ++j) {
    int z = ext.index_of(j, 0);
    for (int x = 0; x < fg.order; ++x)
      if (fg.mult[z][x] != fg.mult[x][z]) fail("extension: Z_n factor not central");
  }
  return ext;
}

// ---- irrep solver: commutant splitting of the left regular representation ----

namespace {

struct Block {
  CMatrix basis;  // order x m isometry
};

CMatrix random_hermitian(int m, Rng& rng) {
  CMatrix x(m, m);
  for (int i = 0; i < m; ++i) {
    x(i, i) = rng.next_normal();
    for (int j = i + 1; j < m; ++j) {
      cplx v(rng.next_normal(), rng.next_normal());
      x(i, j) = v;
      x(j, i) = std::conj(v);
    }
  }
  return x;
}

// left regular action applied to the columns of X: Y = R(g) X, via row permutation
CMatrix permute_rows(const FiniteGroup& fg, int g, const CMatrix& x) {
  CMatrix y(x.rows, x.cols);
  for (int h = 0; h < fg.order; ++h) {
    int gh = fg.mult[g][h];
    for (int j = 0; j < x.cols; ++j) y(gh, j) = x(h, j);
  }
  return y;
}

// block rep matrices: Rb(g) = B^H R(g) B
std::vector<CMatrix> block_rep(const FiniteGroup& fg, const CMatrix& basis) {
  std::vector<CMatrix> mats(fg.order);
  CMatrix bh = basis.adjoint();
  for (int g = 0; g < fg.order; ++g) mats[g] = bh.mul(permute_rows(fg, g, basis));
  return mats;
}

// Reynolds average of X over the block rep
CMatrix reynolds(const std::vector<CMatrix>& rb, const CMatrix& x) {
  int m = x.rows;
  CMatrix acc(m, m);
  for (const auto& r : rb) acc = acc.add(r.mul(x).mul(r.adjoint()));
  return acc.scaled(1.0 / double(rb.size()));
}

bool is_scalar(const CMatrix& y, double tol) {
  cplx mean = y.trace() / double(y.rows);
  CMatrix d = y.sub(CMatrix::identity(y.rows).scaled(mean));
  return d.max_abs() <= tol;
}

}  // namespace

std::vector<FiniteRep> irreps(const FiniteGroup& g, std::uint64_t seed) {
  if (g.order > 10000) fail("irreps: group too large for desk scale");
  Rng rng(seed * 0x9e3779b97f4a7c15ull + 0x1234567ull);
  std::vector<Block> queue;
  {
    Block all;
    all.basis = CMatrix::identity(g.order);
    queue.push_back(std::move(all));
  }
  std::vector<Block> finished;

  while (!queue.empty()) {
    Block blk = std::move(queue.back());
    queue.pop_back();
    int m = blk.basis.cols;
    auto rb = block_rep(g, blk.basis);

    bool split_done = false;
    bool irreducible = false;
    for (int attempt = 0; attempt < 64 && !split_done && !irreducible; ++attempt) {
      CMatrix y = reynolds(rb, random_hermitian(m, rng));
      if (is_scalar(y, 1e-8)) {
        // confirm with a second probe
        CMatrix y2 = reynolds(rb, random_hermitian(m, rng));
        if (is_scalar(y2, 1e-8)) irreducible = true;
        continue;
      }
      EigResult eig = hermitian_eig(y);
      // cluster eigenvalues; gaps below 1e-6 are merged
      std::vector<std::pair<int, int>> clusters;
      int start = 0;
      for (int i = 1; i < m; ++i)
        if (eig.eigenvalues[i] - eig.eigenvalues[i - 1] > 1e-6) {
          clusters.emplace_back(start, i);
          start = i;
        }
      clusters.emplace_back(start, m);
      if (clusters.size() < 2) continue;  // unlucky probe, redraw
      for (auto [s, e] : clusters) {
        Block sub;
        sub.basis = blk.basis.mul(eig.vectors.block(0, s, m, e - s));
        sub.basis.orthonormalize_columns();
        queue.push_back(std::move(sub));
      }
      split_done = true;
    }
    if (irreducible) {
      finished.push_back(std::move(blk));
    } else if (!split_done) {
      fail("irreps: splitting failed to converge after max retries (block dim " +
           std::to_string(m) + ")");
    }
  }

  // deduplicate by character vector, then order canonically
  std::vector<FiniteRep> reps;
  std::vector<std::vector<cplx>> chars;
  for (auto& blk : finished) {
    blk.basis.orthonormalize_columns();
    FiniteRep rep;
    rep.group = &g;
    rep.dim = blk.basis.cols;
    rep.mats = block_rep(g, blk.basis);
    auto ch = rep.character();
    bool dup = false;
    for (const auto& c : chars) {
      double d = 0.0;
      for (int i = 0; i < g.order; ++i) d = std::max(d, std::abs(c[i] - ch[i]));
      if (d <= kTolEq) { dup = true; break; }
    }
    if (!dup) {
      chars.push_back(std::move(ch));
      reps.push_back(std::move(rep));
    }
  }

  auto quantized = [&](const FiniteRep& r) {
    std::vector<std::pair<long long, long long>> key;
    for (const auto& c : r.character())
      key.emplace_back(llround(c.real() * 1e6), llround(c.imag() * 1e6));
    return key;
  };
  std::stable_sort(reps.begin(), reps.end(), [&](const FiniteRep& x, const FiniteRep& y) {
    if (x.dim != y.dim) return x.dim < y.dim;
    return quantized(x) < quantized(y);
  });

  int dimsq = 0;
  for (const auto& r : reps) dimsq += r.dim * r.dim;
  if (dimsq != g.order) fail("irreps: sum of squared dimensions != |G|");
  if (int(reps.size()) != g.conjugacy_class_count())
    fail("irreps: count != conjugacy class count");
  for (const auto& r : reps) r.check_valid();
  return reps;
}

std::vector<FiniteRep> filter_gstar(const std::vector<FiniteRep>& reps,
                                    const Extension& ext) {
  std::vector<FiniteRep> out;
  if (ext.n == 1) return reps;
  int zgen = ext.central_generator();
  cplx zeta = Turn::rational(1, ext.n).unit();
  for (const auto& r : reps) {
    CMatrix want = CMatrix::identity(r.dim).scaled(zeta);
    if (max_abs_diff(r.mats[zgen], want) <= kTolEq) out.push_back(r);
  }
  int dimsq = 0;
  for (const auto& r : out) dimsq += r.dim * r.dim;
  if (dimsq != int(ext.H.size()))
    fail("filter_gstar: filtered dimension count != |H|");
  return out;
}

ProjectiveRep extract_projective(const FiniteRep& theta, const Extension& ext,
                                 const TwoCocycle& omega_fin) {
  ProjectiveRep phi;
  phi.H = ext.H;
  phi.dim = theta.dim;
  int n = int(ext.H.size());
  phi.mats.resize(n);
  for (int i = 0; i < n; ++i) phi.mats[i] = theta.mats[ext.index_of(0, i)];
  // audit: Phi(xy) = omega_fin(x,y) Phi(x) Phi(y)
  const PointGroup& pg = *omega_fin.point;
  std::vector<int> pos(pg.order, -1);
  for (int i = 0; i < n; ++i) pos[ext.H[i]] = i;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int k = pos[pg.mult[ext.H[i]][ext.H[j]]];
      CMatrix rhs = phi.mats[i].mul(phi.mats[j]).scaled(omega_fin.at_pos(i, j).unit());
      if (max_abs_diff(phi.mats[k], rhs) > kTolEq)
        fail("extract_projective: multiplicativity defect above tolerance");
    }
  return phi;
}

}  // namespace cdual
