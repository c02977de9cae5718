#include "mackey.hpp"

#include <algorithm>

#include "rng.hpp"

namespace cdual {

Turn chi_star(const CrystalGroup& g, const Character& chi, const GElement& x) {
  OrbitData od = g.orbit_stabilizer(chi);
  if (!std::binary_search(od.stabilizer.begin(), od.stabilizer.end(), x.d))
    fail("chi_star: element outside the stabilizer");
  // gamma(q(x))^{-1} x = i(M_d^{-1} n)
  IntVec m(g.dim, 0);
  const IntMat& mi = g.point.action_inv[x.d];
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) m[i] += mi[i][j] * x.n[j];
  return chi.eval(m);
}

bool StabRep::in_domain(int point_index) const {
  return std::binary_search(stab.begin(), stab.end(), point_index);
}

CMatrix StabRep::eval(const GElement& x) const {
  auto it = std::lower_bound(stab.begin(), stab.end(), x.d);
  if (it == stab.end() || *it != x.d) fail("stab rep: element outside domain");
  size_t pos = size_t(it - stab.begin());
  // sigma(i(m) gamma(d)) = chi(m) * scale(d) * mat(d); chi* collapses to
  // chi(m) on the stabilizer
  Turn phase = chi.eval(x.n).mul(scale[pos]);
  return mats[pos].scaled(phase.unit());
}

StabRep lift_to_stab(const CrystalGroup& g, const Character& chi,
                     const FiniteRep& theta, const Extension& ext,
                     const NormalizedFunction& eq, const NormalizedFunction& fin,
                     const TwoCocycle& omega_fin, std::uint64_t seed) {
  ProjectiveRep phi = extract_projective(theta, ext, omega_fin);
  StabRep out;
  out.cg = &g;
  out.chi = chi;
  out.stab = ext.H;
  out.dim = phi.dim;
  out.mats = phi.mats;
  out.scale.resize(ext.H.size());
  for (size_t i = 0; i < ext.H.size(); ++i) {
    int h = ext.H[i];
    out.scale[i] = fin.at(h).div(eq.at(h));  // eq^{-1} * fin
  }

  // audits: homomorphism on relators and sampled products, chi-isotypic
  Rng rng(seed ^ 0xabcddcba12344321ull);
  auto random_stab_element = [&]() {
    IntVec m(g.dim);
    for (int j = 0; j < g.dim; ++j) m[j] = rng.next_int(7) - 3;
    int h = ext.H[size_t(rng.next_int(int(ext.H.size())))];
    return g.mul(g.lattice(m), g.sect(h));
  };
  for (int it = 0; it < 1000; ++it) {
    GElement x = random_stab_element();
    GElement y = random_stab_element();
    CMatrix lhs = out.eval(g.mul(x, y));
    CMatrix rhs = out.eval(x).mul(out.eval(y));
    if (max_abs_diff(lhs, rhs) > kTolEq)
      fail("lift audit: homomorphism defect at a sampled product");
  }
  for (int j = 0; j < g.dim; ++j) {
    IntVec m(g.dim, 0);
    m[j] = 1;
    CMatrix img = out.eval(g.lattice(m));
    CMatrix want = CMatrix::identity(out.dim).scaled(chi.u[j].unit());
    if (max_abs_diff(img, want) > kTolEq)
      fail("lift audit: lattice restriction is not chi-isotypic");
  }
  // irreducibility: transversal-averaged commutant probe must be scalar
  {
    CMatrix x(out.dim, out.dim);
    Rng prng(seed ^ 0x5555aaaa5555aaaaull);
    for (int i = 0; i < out.dim; ++i) {
      x(i, i) = prng.next_normal();
      for (int j = i + 1; j < out.dim; ++j) {
        cplx v(prng.next_normal(), prng.next_normal());
        x(i, j) = v;
        x(j, i) = std::conj(v);
      }
    }
    CMatrix acc(out.dim, out.dim);
    for (int h : out.stab) {
      CMatrix u = out.eval(g.sect(h));
      acc = acc.add(u.mul(x).mul(u.adjoint()));
    }
    acc = acc.scaled(1.0 / double(out.stab.size()));
    cplx mean = acc.trace() / double(out.dim);
    if (acc.sub(CMatrix::identity(out.dim).scaled(mean)).max_abs() > 1e-8)
      fail("lift audit: commutant probe is not scalar");
  }
  return out;
}

InducedRep induce(const StabRep& sigma) {
  std::vector<int> all(sigma.cg->point.order);
  for (int i = 0; i < sigma.cg->point.order; ++i) all[i] = i;
  return induce_to(sigma, all);
}

InducedRep induce_to(const StabRep& sigma, const std::vector<int>& ambient) {
  const CrystalGroup& g = *sigma.cg;
  check_subgroup(g.point, ambient);
  for (int h : sigma.stab)
    if (!std::binary_search(ambient.begin(), ambient.end(), h))
      fail("induce: stabilizer not inside the ambient subgroup");
  InducedRep out;
  out.sigma = sigma;
  out.ambient = ambient;
  // canonical transversal: ascending point index, one per coset
  std::vector<bool> covered(g.point.order, false);
  for (int d : ambient) {
    if (covered[d]) continue;
    out.transversal.push_back(d);
    for (int h : sigma.stab) covered[g.point.mult[d][h]] = true;
  }
  out.dim = int(out.transversal.size()) * sigma.dim;
  return out;
}

CMatrix InducedRep::eval(const GElement& x) const {
  const CrystalGroup& g = *sigma.cg;
  if (!std::binary_search(ambient.begin(), ambient.end(), x.d))
    fail("induced rep: element outside the ambient subgroup");
  int nt = int(transversal.size());
  int m = sigma.dim;
  CMatrix out(nt * m, nt * m);
  for (int j = 0; j < nt; ++j) {
    GElement tj_inv = g.inv(g.sect(transversal[j]));
    GElement left = g.mul(tj_inv, x);
    for (int l = 0; l < nt; ++l) {
      GElement y = g.mul(left, g.sect(transversal[l]));
      if (sigma.in_domain(y.d)) out.set_block(j * m, l * m, sigma.eval(y));
    }
  }
  return out;
}

GRep as_grep(const InducedRep& rep) {
  GRep g;
  g.dim = rep.dim;
  g.base_chi = rep.sigma.chi;
  auto copy = std::make_shared<InducedRep>(rep);
  g.eval = [copy](const GElement& x) { return copy->eval(x); };
  return g;
}

namespace {

std::vector<Character> rows_from_diagonals(const CrystalGroup& g,
                                           const std::vector<CMatrix>& imgs) {
  int n = imgs[0].rows;
  std::vector<Character> rows(n);
  for (int i = 0; i < n; ++i) {
    rows[i].u.resize(g.dim);
    for (int j = 0; j < g.dim; ++j) {
      cplx v = imgs[j](i, i);
      if (std::fabs(std::abs(v) - 1.0) > 1e-6)
        fail("lattice restriction has a non-unimodular diagonal entry");
      rows[i].u[j] = Turn::real(std::arg(v) / (2.0 * M_PI));
    }
  }
  return rows;
}

}  // namespace

std::vector<Character> lattice_row_characters(const CrystalGroup& g, const GRep& rep) {
  std::vector<CMatrix> imgs(g.dim);
  for (int j = 0; j < g.dim; ++j) {
    IntVec m(g.dim, 0);
    m[j] = 1;
    imgs[j] = rep.eval(g.lattice(m));
    if (!imgs[j].is_diagonal(1e-8))
      fail("lattice restriction is not diagonal in this basis");
  }
  return rows_from_diagonals(g, imgs);
}

LatticeDiag lattice_diagonalize(const CrystalGroup& g, const GRep& rep) {
  std::vector<CMatrix> imgs(g.dim);
  bool diagonal = true;
  for (int j = 0; j < g.dim; ++j) {
    IntVec m(g.dim, 0);
    m[j] = 1;
    imgs[j] = rep.eval(g.lattice(m));
    diagonal = diagonal && imgs[j].is_diagonal(1e-9);
  }
  LatticeDiag out;
  if (diagonal) {
    out.basis = CMatrix::identity(rep.dim);
    out.rows = rows_from_diagonals(g, imgs);
    return out;
  }
  // refine subspaces by the Hermitian and anti-Hermitian parts of the
  // commuting unitaries; joint eigenspaces fall out deterministically
  std::vector<CMatrix> subspaces = {CMatrix::identity(rep.dim)};
  for (int j = 0; j < g.dim; ++j) {
    for (int part = 0; part < 2; ++part) {
      CMatrix h = part == 0 ? imgs[j].add(imgs[j].adjoint()).scaled(0.5)
                            : imgs[j].sub(imgs[j].adjoint()).scaled(cplx(0, -0.5));
      std::vector<CMatrix> next;
      for (const auto& s : subspaces) {
        if (s.cols == 1) {
          next.push_back(s);
          continue;
        }
        EigResult eig = hermitian_eig(s.adjoint().mul(h).mul(s), 1e-7);
        int start = 0;
        for (int i = 1; i <= s.cols; ++i) {
          if (i == s.cols || eig.eigenvalues[i] - eig.eigenvalues[i - 1] > 1e-7) {
            CMatrix sub = s.mul(eig.vectors.block(0, start, s.cols, i - start));
            sub.orthonormalize_columns();
            next.push_back(std::move(sub));
            start = i;
          }
        }
      }
      subspaces = std::move(next);
    }
  }
  out.basis = CMatrix(rep.dim, rep.dim);
  int col = 0;
  for (const auto& s : subspaces) {
    out.basis.set_block(0, col, s);
    col += s.cols;
  }
  if (col != rep.dim) fail("lattice diagonalization: subspaces do not span");
  out.basis.orthonormalize_columns();
  std::vector<CMatrix> conj(g.dim);
  for (int j = 0; j < g.dim; ++j) {
    conj[j] = out.basis.adjoint().mul(imgs[j]).mul(out.basis);
    if (!conj[j].is_diagonal(1e-8))
      fail("lattice diagonalization failed to commute the images");
  }
  out.rows = rows_from_diagonals(g, conj);
  return out;
}

CompressedRep compress_to_isotypic(const CrystalGroup& g, const GRep& rep,
                                   const Character& chi) {
  LatticeDiag diag = lattice_diagonalize(g, rep);
  CompressedRep out;
  for (int i = 0; i < rep.dim; ++i)
    if (diag.rows[i].same(chi, 1e-8)) out.rows.push_back(i);
  if (out.rows.empty()) fail("not chi-isotypic: no rows carry the base character");
  out.dim = int(out.rows.size());
  // isometry onto the chi-isotypic columns of the diagonalizing basis
  CMatrix iso(rep.dim, out.dim);
  for (int j = 0; j < out.dim; ++j)
    for (int i = 0; i < rep.dim; ++i) iso(i, j) = diag.basis(i, out.rows[j]);
  auto eval = rep.eval;
  out.eval = [eval, iso](const GElement& x) {
    return iso.adjoint().mul(eval(x)).mul(iso);
  };
  return out;
}

cplx stab_inner_product(const CrystalGroup& g, const std::vector<int>& stab,
                        const std::function<CMatrix(const GElement&)>& s1,
                        const std::function<CMatrix(const GElement&)>& s2) {
  cplx acc = 0.0;
  for (int h : stab) {
    GElement x = g.sect(h);
    acc += s1(x).trace() * std::conj(s2(x).trace());
  }
  return acc / double(stab.size());
}

bool equivalent(const CrystalGroup& g, const GRep& p1, const GRep& p2) {
  if (p1.dim != p2.dim) return false;
  // align base characters into one orbit
  int align = -1;
  for (int d = 0; d < g.point.order; ++d)
    if (g.dual_action(d, p2.base_chi).same(p1.base_chi, 1e-9)) { align = d; break; }
  if (align < 0) return false;

  OrbitData od = g.orbit_stabilizer(p1.base_chi);
  CompressedRep s1 = compress_to_isotypic(g, p1, p1.base_chi);
  // conjugate p2 by gamma(align): x -> p2(gamma^{-1} x gamma)
  GElement gam = g.sect(align);
  GElement gam_inv = g.inv(gam);
  GRep p2c;
  p2c.dim = p2.dim;
  p2c.base_chi = p1.base_chi;
  auto e2 = p2.eval;
  const CrystalGroup* gp = &g;
  p2c.eval = [e2, gam, gam_inv, gp](const GElement& x) {
    return e2(gp->mul(gp->mul(gam_inv, x), gam));
  };
  CompressedRep s2 = compress_to_isotypic(g, p2c, p1.base_chi);
  if (s1.dim != s2.dim) return false;

  cplx self1 = stab_inner_product(g, od.stabilizer, s1.eval, s1.eval);
  cplx cross = stab_inner_product(g, od.stabilizer, s1.eval, s2.eval);
  if (std::abs(self1 - 1.0) > kTolEq)
    fail("equivalent: left operand is not irreducible at stabilizer level");
  return std::abs(cross - 1.0) <= kTolEq;
}

DualResult dual_over_orbit(const CrystalGroup& g, const Character& chi,
                           std::uint64_t seed) {
  if (!chi.exact()) fail("dual_over_orbit requires an exact character");
  DualResult res;
  res.chi = chi;
  res.orbit = g.orbit_stabilizer(chi);
  TwoCocycle omega = omega_chi(g, chi, res.orbit.stabilizer);
  res.eqz = equalize(omega);
  res.fin = finitize(res.eqz.omega_eq);
  Extension ext = build_extension(res.orbit.stabilizer, res.fin.omega_fin, res.fin.n);
  auto all = irreps(ext.group, seed);
  auto kept = filter_gstar(all, ext);
  for (const auto& theta : kept)
    res.stab_reps.push_back(lift_to_stab(g, chi, theta, ext, res.eqz.eq,
                                         res.fin.fin, res.fin.omega_fin, seed));
  for (const auto& s : res.stab_reps) res.induced.push_back(induce(s));

  // dimension law: sum dim^2 = |orbit| * |D|
  int dimsq = 0;
  for (const auto& p : res.induced) dimsq += p.dim * p.dim;
  if (dimsq != int(res.orbit.orbit.size()) * g.point.order)
    fail("dual_over_orbit: dimension law violated");
  // relator audit: the defining words agree as matrix products, and the
  // lattice generator images commute
  for (const auto& p : res.induced) {
    auto word_image = [&](const std::vector<std::pair<int, int>>& word) {
      CMatrix m = CMatrix::identity(p.dim);
      for (auto [gi, pw] : word) {
        CMatrix img = p.eval(g.generators[gi].g);
        if (pw < 0) img = img.adjoint();
        for (int i = 0; i < std::abs(pw); ++i) m = m.mul(img);
      }
      return m;
    };
    if (!g.relator_words.empty()) {
      CMatrix first = word_image(g.relator_words[0]);
      for (const auto& w : g.relator_words)
        if (max_abs_diff(word_image(w), first) > kTolEq)
          fail("dual_over_orbit: relator audit failed");
    }
    for (int i = 0; i < g.dim; ++i)
      for (int j = i + 1; j < g.dim; ++j) {
        IntVec mi(g.dim, 0), mj(g.dim, 0);
        mi[i] = 1;
        mj[j] = 1;
        CMatrix a = p.eval(g.lattice(mi)), b = p.eval(g.lattice(mj));
        if (max_abs_diff(a.mul(b), b.mul(a)) > kTolEq)
          fail("dual_over_orbit: lattice images do not commute");
      }
  }
  // pairwise inequivalence
  for (size_t i = 0; i < res.induced.size(); ++i)
    for (size_t j = i + 1; j < res.induced.size(); ++j)
      if (equivalent(g, as_grep(res.induced[i]), as_grep(res.induced[j])))
        fail("dual_over_orbit: two outputs are equivalent");
  return res;
}

}  // namespace cdual
