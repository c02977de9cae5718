#include "topology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "rng.hpp"

namespace cdual {

Character CharacterPath::at(const Frac& t) const {
  Character chi;
  chi.u.reserve(coords.size());
  for (const auto& c : coords) chi.u.push_back(Turn::from_frac(c.c0 + c.c1 * t));
  return chi;
}

Frac CharacterPath::schedule(int k) const {
  std::int64_t den = 1;
  for (int i = 0; i < k; ++i) den *= 2;
  return Frac(den - 1, den);
}

bool detect_orbit_drop(const CrystalGroup& g, const Character& chi, int k,
                       double eps, int samples, std::uint64_t seed,
                       const CharacterPath* curve) {
  if (eps <= 0) fail("detect_orbit_drop: eps must be positive");
  OrbitData od = g.orbit_stabilizer(chi);
  if (int(od.orbit.size()) >= k) return false;
  Rng rng(seed ^ 0xd1700b17ull);
  for (int s = 0; s < samples; ++s) {
    Character probe;
    if (curve) {
      // sample along the curve just short of its target
      double delta = std::max(eps * rng.next_unit(), 1e-7);
      std::int64_t den = 1'000'003;
      Frac t = Frac(1) - Frac(std::int64_t(delta * double(den)) + 1, den);
      probe = curve->at(t);
    } else {
      probe.u.resize(g.dim);
      for (int j = 0; j < g.dim; ++j) {
        double d = (2.0 * rng.next_unit() - 1.0) * eps;
        probe.u[j] = Turn::real(chi.u[j].value() + d);
      }
    }
    if (int(g.orbit_stabilizer(probe).orbit.size()) == k) return true;
  }
  return false;
}

namespace {

// choose among raw * adjuster the branch entrywise closest to prev
NormalizedFunction nearest_witness(const NormalizedFunction& raw,
                                   const std::vector<NormalizedFunction>& adjusters,
                                   const NormalizedFunction* prev) {
  if (!prev) return raw;
  NormalizedFunction best_val;
  double best_d = -1.0;
  for (const auto& adj : adjusters) {
    NormalizedFunction cand = raw;
    double d = 0.0;
    for (size_t i = 0; i < cand.values.size(); ++i) {
      cand.values[i] = raw.values[i].mul(adj.values[i]);
      d = std::max(d, std::abs(cand.values[i].unit() - prev->values[i].unit()));
    }
    if (best_d < 0 || d < best_d) {
      best_val = std::move(cand);
      best_d = d;
    }
  }
  return best_val;
}

double witness_gap(const NormalizedFunction& x, const NormalizedFunction& y) {
  double d = 0.0;
  for (size_t i = 0; i < x.values.size(); ++i)
    d = std::max(d, std::abs(x.values[i].unit() - y.values[i].unit()));
  return d;
}

// the k-th term of the sequence as a stabilizer rep over G_*
StabRep sequence_term(const CharacterPath& path, const GenericSequence& seq, int k) {
  const StabRep& sig0 = seq.base.stab_reps[seq.branch];
  StabRep term = sig0;
  term.chi = path.at(path.schedule(k));
  term.stab = seq.shared_stab;
  for (size_t i = 0; i < seq.shared_stab.size(); ++i)
    term.scale[i] = sig0.scale[i].mul(seq.witnesses[k - 1].values[i]);
  return term;
}

}  // namespace

GenericSequence generic_sequence(const CharacterPath& path, int branch,
                                 std::uint64_t seed) {
  const CrystalGroup& g = *path.cg;
  GenericSequence out;

  Character chi0 = path.at(path.schedule(1));
  if (!chi0.exact()) fail("generic_sequence: path samples must be exact");
  out.shared_stab = g.orbit_stabilizer(chi0).stabilizer;
  Character target = path.target();
  OrbitData od_target = g.orbit_stabilizer(target);
  for (int h : out.shared_stab)
    if (!std::binary_search(od_target.stabilizer.begin(), od_target.stabilizer.end(), h))
      fail("generic_sequence: sample stabilizer not inside the target stabilizer");

  out.base = dual_over_orbit(g, chi0, seed);
  if (branch < 0 || branch >= int(out.base.stab_reps.size()))
    fail("generic_sequence: branch out of range");
  out.branch = branch;
  const StabRep& sig0 = out.base.stab_reps[branch];

  TwoCocycle w0 = omega_chi(g, chi0, out.shared_stab);
  auto adjusters = witness_adjusters(g.point, out.shared_stab);
  const NormalizedFunction* prev = nullptr;
  for (int k = 1; k <= path.samples; ++k) {
    Character chik = path.at(path.schedule(k));
    OrbitData odk = g.orbit_stabilizer(chik);
    if (odk.stabilizer != out.shared_stab)
      fail("generic_sequence: stabilizer changes along the path at sample " +
           std::to_string(k));
    TwoCocycle wk = omega_chi(g, chik, out.shared_stab);
    auto lam = cohomologous_witness(wk, w0);
    if (!lam)
      fail("generic_sequence: no cohomologous witness at t_" + std::to_string(k));
    out.witnesses.push_back(nearest_witness(*lam, adjusters, prev));
    prev = &out.witnesses.back();
  }
  {
    TwoCocycle wt =
        omega_chi(g, target, od_target.stabilizer).restricted(out.shared_stab);
    auto lam = cohomologous_witness(wt, w0);
    if (!lam) fail("generic_sequence: no witness at the path target");
    out.witness_limit = nearest_witness(*lam, adjusters, prev);
  }
  out.witness_cauchy_tail = 0.0;
  int from = std::max(1, path.samples - 3);
  for (int k = from; k < path.samples; ++k)
    out.witness_cauchy_tail = std::max(
        out.witness_cauchy_tail, witness_gap(out.witnesses[k - 1], out.witnesses[k]));

  // limit term chi* . Phi . lambda over G_*
  out.limit = sig0;
  out.limit.chi = target;
  out.limit.stab = out.shared_stab;
  for (size_t i = 0; i < out.shared_stab.size(); ++i)
    out.limit.scale[i] = sig0.scale[i].mul(out.witness_limit.values[i]);

  // entrywise gap against the last sampled term on a small element sample
  out.term_vs_limit_gap = 0.0;
  {
    StabRep termK = sequence_term(path, out, path.samples);
    std::vector<GElement> sample;
    for (int h : out.shared_stab) sample.push_back(g.sect(h));
    for (int j = 0; j < g.dim; ++j) {
      IntVec m(g.dim, 0);
      m[j] = 1;
      sample.push_back(g.mul(g.lattice(m), g.sect(out.shared_stab.back())));
    }
    for (const auto& x : sample)
      out.term_vs_limit_gap =
          std::max(out.term_vs_limit_gap,
                   max_abs_diff(termK.eval(x), out.limit.eval(x)));
  }
  return out;
}

EntrywiseLimit entrywise_limit(const CharacterPath& path, int branch,
                               std::uint64_t seed) {
  EntrywiseLimit out;
  out.seq = generic_sequence(path, branch, seed);
  out.rep = induce(out.seq.limit);

  const CrystalGroup& g = *path.cg;
  InducedRep indK = induce(sequence_term(path, out.seq, path.samples));
  out.cauchy_gap = 0.0;
  for (const auto& gen : g.generators)
    out.cauchy_gap =
        std::max(out.cauchy_gap, max_abs_diff(indK.eval(gen.g), out.rep.eval(gen.g)));

  // the limit is a representation: relator words agree as matrix products
  out.relator_defect = 0.0;
  auto word_image = [&](const std::vector<std::pair<int, int>>& word) {
    CMatrix m = CMatrix::identity(out.rep.dim);
    for (auto [gi, p] : word) {
      CMatrix img = out.rep.eval(g.generators[gi].g);
      if (p < 0) img = img.adjoint();
      for (int i = 0; i < std::abs(p); ++i) m = m.mul(img);
    }
    return m;
  };
  if (!g.relator_words.empty()) {
    CMatrix first = word_image(g.relator_words[0]);
    for (const auto& w : g.relator_words)
      out.relator_defect = std::max(out.relator_defect,
                                    max_abs_diff(word_image(w), first));
    if (out.relator_defect > kTolEq)
      fail("entrywise limit violates the relator words");
  }
  return out;
}

double inner_product(const CrystalGroup& g, const Character& chi,
                     const std::vector<int>& stab,
                     const std::function<CMatrix(const GElement&)>& sigma, int dim_sigma,
                     const std::function<CMatrix(const GElement&)>& rho, int dim_rho,
                     std::uint64_t seed) {
  // restriction audit: both must be chi-isotypic over the lattice
  for (int j = 0; j < g.dim; ++j) {
    IntVec m(g.dim, 0);
    m[j] = 1;
    cplx want = chi.u[j].unit();
    if (max_abs_diff(sigma(g.lattice(m)),
                     CMatrix::identity(dim_sigma).scaled(want)) > 1e-8 ||
        max_abs_diff(rho(g.lattice(m)),
                     CMatrix::identity(dim_rho).scaled(want)) > 1e-8)
      fail("not chi-isotypic");
  }
  cplx base = stab_inner_product(g, stab, sigma, rho);
  if (std::fabs(base.imag()) > 1e-8) fail("inner product has an imaginary part");

  // transversal independence: recompute with lattice-shifted representatives
  Rng rng(seed ^ 0x7ab5717eull);
  for (int trial = 0; trial < 3; ++trial) {
    cplx acc = 0.0;
    for (int h : stab) {
      IntVec m(g.dim);
      for (int j = 0; j < g.dim; ++j) m[j] = rng.next_int(9) - 4;
      GElement x = g.mul(g.lattice(m), g.sect(h));
      acc += sigma(x).trace() * std::conj(rho(x).trace());
    }
    acc /= double(stab.size());
    if (std::abs(acc - base) > 1e-10)
      fail("inner product is not transversal independent");
  }
  return base.real();
}

// ---- block diagonalization of the G-level limit ----

namespace {

struct LimitBlocks {
  CMatrix unitary;               // U with U^H L(g) U block diagonal
  std::vector<int> sizes;        // block dims in order
  double leakage = 0.0;
};

// commutant projection for the limit rep: zero entries joining rows with
// different lattice characters, then average over the section conjugations
CMatrix commutant_project(const std::vector<int>& row_group, const CMatrix& x,
                          const std::vector<CMatrix>& sect_imgs) {
  int n = x.rows;
  CMatrix y = x;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (row_group[i] != row_group[j]) y(i, j) = 0.0;
  CMatrix acc(n, n);
  for (const auto& u : sect_imgs) acc = acc.add(u.mul(y).mul(u.adjoint()));
  acc = acc.scaled(1.0 / double(sect_imgs.size()));
  // the average of conjugates of an N-commutant element stays N-compatible;
  // re-zero to clear rounding dust
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (row_group[i] != row_group[j]) acc(i, j) = 0.0;
  return acc;
}

LimitBlocks block_diagonalize_limit(const CrystalGroup& g, const InducedRep& rep,
                                    std::uint64_t seed) {
  int n = rep.dim;
  // group rows by their exact lattice character (orbit repeats at the drop)
  std::vector<Character> row_chi(n);
  {
    const StabRep& s = rep.sigma;
    for (size_t t = 0; t < rep.transversal.size(); ++t) {
      Character c = g.dual_action(rep.transversal[t], s.chi);
      for (int i = 0; i < s.dim; ++i) row_chi[t * s.dim + i] = c;
    }
  }
  std::vector<int> row_group(n, -1);
  int groups = 0;
  for (int i = 0; i < n; ++i) {
    if (row_group[i] >= 0) continue;
    for (int j = i; j < n; ++j)
      if (row_group[j] < 0 && row_chi[i].same(row_chi[j])) row_group[j] = groups;
    ++groups;
  }

  std::vector<CMatrix> sect_imgs;
  for (int d = 0; d < g.point.order; ++d) sect_imgs.push_back(rep.eval(g.sect(d)));

  Rng rng(seed ^ 0xb10cd1a6ull);
  auto random_herm = [&](int m) {
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
  };

  // recursive splitting over isometries into the original space
  std::vector<CMatrix> queue = {CMatrix::identity(n)};
  std::vector<CMatrix> blocks;
  while (!queue.empty()) {
    CMatrix basis = std::move(queue.back());
    queue.pop_back();
    int m = basis.cols;
    bool done = false;
    for (int attempt = 0; attempt < 64 && !done; ++attempt) {
      CMatrix probe = basis.mul(random_herm(m)).mul(basis.adjoint());
      CMatrix c = commutant_project(row_group, probe, sect_imgs);
      CMatrix yc = basis.adjoint().mul(c).mul(basis);
      cplx mean = yc.trace() / double(m);
      if (yc.sub(CMatrix::identity(m).scaled(mean)).max_abs() <= 1e-8) {
        CMatrix probe2 = basis.mul(random_herm(m)).mul(basis.adjoint());
        CMatrix c2 = commutant_project(row_group, probe2, sect_imgs);
        CMatrix yc2 = basis.adjoint().mul(c2).mul(basis);
        cplx mean2 = yc2.trace() / double(m);
        if (yc2.sub(CMatrix::identity(m).scaled(mean2)).max_abs() <= 1e-8) {
          blocks.push_back(basis);
          done = true;
        }
        continue;
      }
      EigResult eig = hermitian_eig(yc, 1e-7);
      std::vector<std::pair<int, int>> clusters;
      int start = 0;
      for (int i = 1; i < m; ++i)
        if (eig.eigenvalues[i] - eig.eigenvalues[i - 1] > 1e-6) {
          clusters.emplace_back(start, i);
          start = i;
        }
      clusters.emplace_back(start, m);
      if (clusters.size() < 2) continue;
      for (auto [s, e] : clusters) {
        CMatrix sub = basis.mul(eig.vectors.block(0, s, m, e - s));
        // purify by lattice-character groups so restrictions stay diagonal
        CMatrix purified(n, sub.cols);
        int col = 0;
        for (int grp = 0; grp < groups; ++grp) {
          CMatrix proj = sub;
          for (int i = 0; i < n; ++i)
            if (row_group[i] != grp)
              for (int j = 0; j < proj.cols; ++j) proj(i, j) = 0.0;
          // keep independent directions of the projected columns
          for (int j = 0; j < proj.cols; ++j) {
            std::vector<cplx> v(n);
            for (int i = 0; i < n; ++i) v[i] = proj(i, j);
            for (int kcol = 0; kcol < col; ++kcol) {
              cplx dot = 0.0;
              for (int i = 0; i < n; ++i) dot += std::conj(purified(i, kcol)) * v[i];
              for (int i = 0; i < n; ++i) v[i] -= dot * purified(i, kcol);
            }
            double nrm = 0.0;
            for (int i = 0; i < n; ++i) nrm += std::norm(v[i]);
            nrm = std::sqrt(nrm);
            if (nrm > 1e-6) {
              if (col >= sub.cols) fail("block split: rank overflow in purification");
              for (int i = 0; i < n; ++i) purified(i, col) = v[i] / nrm;
              ++col;
            }
          }
        }
        if (col != sub.cols) fail("block split: purification lost rank");
        queue.push_back(purified);
      }
      done = true;
    }
    if (!done) fail("block diagonalization failed to converge");
  }

  // canonical order: by block size, then first-row support
  std::stable_sort(blocks.begin(), blocks.end(), [](const CMatrix& x, const CMatrix& y) {
    return x.cols < y.cols;
  });
  LimitBlocks out;
  out.unitary = CMatrix(n, n);
  int col = 0;
  for (const auto& b : blocks) {
    out.sizes.push_back(b.cols);
    out.unitary.set_block(0, col, b);
    col += b.cols;
  }
  if (col != n) fail("block diagonalization: blocks do not span");
  out.unitary.orthonormalize_columns();

  // leakage on generator images
  out.leakage = 0.0;
  for (const auto& gen : g.generators) {
    CMatrix m = out.unitary.adjoint().mul(rep.eval(gen.g)).mul(out.unitary);
    int r0 = 0;
    for (int bi = 0; bi < int(out.sizes.size()); ++bi) {
      int c0 = 0;
      for (int bj = 0; bj < int(out.sizes.size()); ++bj) {
        if (bi != bj)
          out.leakage = std::max(
              out.leakage, m.block(r0, c0, out.sizes[bi], out.sizes[bj]).max_abs());
        c0 += out.sizes[bj];
      }
      r0 += out.sizes[bi];
    }
  }
  return out;
}

}  // namespace

DecompositionReport decompose_limit(const CharacterPath& path, int branch,
                                    std::uint64_t seed, bool with_unitary) {
  const CrystalGroup& g = *path.cg;
  GenericSequence seq = generic_sequence(path, branch, seed);
  Character target = path.target();
  OrbitData od = g.orbit_stabilizer(target);

  // stabilizer-level limit pi = ind_{G_*}^{G_chi} sigma_limit
  InducedRep pi_lim = induce_to(seq.limit, od.stabilizer);

  DualResult target_dual = dual_over_orbit(g, target, seed);
  std::vector<std::string> labels;
  if (g.is_builtin_g90) labels = match_against_reference(g, target_dual);

  DecompositionReport rep;
  rep.target = target;
  rep.limit_stab_dim = pi_lim.dim;

  auto pi_eval = [&](const GElement& x) { return pi_lim.eval(x); };
  int msum = 0;
  for (size_t j = 0; j < target_dual.stab_reps.size(); ++j) {
    const StabRep& rho = target_dual.stab_reps[j];
    auto rho_eval = [&rho](const GElement& x) { return rho.eval(x); };
    double ip = inner_product(g, target, od.stabilizer, pi_eval, pi_lim.dim,
                              rho_eval, rho.dim, seed);
    int m = int(std::llround(ip));
    rep.residual = std::max(rep.residual, std::fabs(ip - double(m)));
    if (rep.residual > 1e-4) fail("non-integral multiplicity");
    if (m < 0) fail("negative multiplicity");
    DecompositionComponent comp;
    comp.label = (j < labels.size() && !labels[j].empty())
                     ? labels[j]
                     : "rho" + std::to_string(j + 1);
    comp.dim = rho.dim;
    comp.induced_dim = target_dual.induced[j].dim;
    comp.multiplicity = m;
    rep.components.push_back(comp);
    msum += m * rho.dim;
  }
  if (msum != pi_lim.dim)
    fail("multiplicity bookkeeping: sum m_j dim rho_j != limit dimension");

  InducedRep L = induce(seq.limit);
  rep.limit_dim = L.dim;
  {
    int total = 0;
    for (const auto& c : rep.components)
      total += c.multiplicity * int(od.orbit.size()) * c.dim;
    if (total != L.dim)
      fail("multiplicity bookkeeping: induced dimensions do not add up");
  }

  if (with_unitary) {
    LimitBlocks blocks = block_diagonalize_limit(g, L, seed);
    rep.block_unitary = blocks.unitary;
    rep.leakage = blocks.leakage;
    // identify each block with a target induced rep
    int col = 0;
    for (int bs : blocks.sizes) {
      GRep blockrep;
      blockrep.dim = bs;
      blockrep.base_chi = target;
      CMatrix iso = blocks.unitary.block(0, col, L.dim, bs);
      auto Lrep = std::make_shared<InducedRep>(L);
      blockrep.eval = [Lrep, iso](const GElement& x) {
        return iso.adjoint().mul(Lrep->eval(x)).mul(iso);
      };
      std::string found;
      for (size_t j = 0; j < target_dual.induced.size(); ++j) {
        if (target_dual.induced[j].dim != bs) continue;
        if (equivalent(g, blockrep, as_grep(target_dual.induced[j]))) {
          found = rep.components[j].label;
          break;
        }
      }
      if (found.empty()) fail("block does not match any target irreducible");
      rep.block_labels.push_back(found);
      col += bs;
    }
    // block multiset must agree with the multiplicity vector
    for (const auto& c : rep.components) {
      int count = 0;
      for (const auto& bl : rep.block_labels)
        if (bl == c.label) ++count;
      if (count != c.multiplicity)
        fail("block multiset disagrees with multiplicities at " + c.label);
    }
  }
  return rep;
}

Character recover_character(const CrystalGroup& g,
                            const std::vector<CMatrix>& lattice_gen_images) {
  if (int(lattice_gen_images.size()) != g.dim)
    fail("recover_character: one matrix per lattice generator required");
  Character chi;
  chi.u.resize(g.dim);
  for (int j = 0; j < g.dim; ++j) {
    cplx v = lattice_gen_images[j](0, 0);
    if (std::fabs(std::abs(v) - 1.0) > 1e-6)
      fail("first diagonal entry not unimodular");
    double angle = std::arg(v) / (2.0 * M_PI);
    Frac f = rational_reconstruct(angle, 1'000'000, 1e-9);
    chi.u[j] = Turn::from_frac(f);
  }
  return chi;
}

// ---- presets ----

const std::vector<Preset>& g90_presets() {
  static const std::vector<Preset> presets = {
      {"8to4T4", {{Frac(1, 3), Frac(1, 6)}, {Frac(1, 5), Frac(0)}, {Frac(1, 7), Frac(-1, 7)}}, 1},
      {"8to2T3", {{Frac(1, 3), Frac(-1, 3)}, {Frac(1, 5), Frac(-1, 5)}, {Frac(1, 7), Frac(0)}}, 1},
      {"8to1T1", {{Frac(1, 3), Frac(-1, 3)}, {Frac(1, 5), Frac(-1, 5)}, {Frac(1, 7), Frac(-1, 7)}}, 1},
      {"4T3to2T1", {{Frac(1, 3), Frac(-1, 3)}, {Frac(1, 2), Frac(0)}, {Frac(0), Frac(0)}}, 2},
      {"4T3to1T2", {{Frac(1, 3), Frac(1, 6)}, {Frac(1, 2), Frac(0)}, {Frac(0), Frac(0)}}, 2},
      {"2T3to1T2", {{Frac(1, 2), Frac(0)}, {Frac(1, 2), Frac(0)}, {Frac(1, 5), Frac(-1, 5)}}, 4},
  };
  return presets;
}

CharacterPath preset_path(const CrystalGroup& g, const std::string& name,
                          int samples) {
  if (!g.is_builtin_g90) fail("presets are defined for the bundled group-90 datum");
  for (const auto& p : g90_presets())
    if (p.name == name) {
      CharacterPath path;
      path.cg = &g;
      path.coords = p.coords;
      path.samples = samples;
      return path;
    }
  fail("unknown preset '" + name + "'");
}

int resolve_branch_label(const CharacterPath& path, int pi_index,
                         std::uint64_t seed) {
  const CrystalGroup& g = *path.cg;
  Character chi0 = path.at(path.schedule(1));
  DualResult base = dual_over_orbit(g, chi0, seed);
  if (g.is_builtin_g90) {
    auto labels = match_against_reference(g, base);
    std::string want = "pi" + std::to_string(pi_index);
    for (size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == want) return int(i);
  }
  if (pi_index >= 1 && pi_index <= int(base.stab_reps.size())) return pi_index - 1;
  fail("branch " + std::to_string(pi_index) + " does not exist at the base sample");
}

}  // namespace cdual
