#include "g90_tables.hpp"

#include <algorithm>

namespace cdual {

namespace {

const cplx I{0.0, 1.0};

CMatrix mk(int n, std::initializer_list<cplx> vals) {
  CMatrix m(n, n);
  auto it = vals.begin();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = *it++;
  return m;
}

CMatrix scalar_mat(int n, cplx v) { return CMatrix::identity(n).scaled(v); }

CMatrix diag(std::initializer_list<cplx> vals) {
  int n = int(vals.size());
  CMatrix m(n, n);
  int i = 0;
  for (cplx v : vals) { m(i, i) = v; ++i; }
  return m;
}

// principal square root: argument in [0, pi)
cplx sqrt_principal(const Turn& t) { return t.sqrt_principal().unit(); }

}  // namespace

std::vector<G90TableRow> g90_reference_rows_impl(const Character& chi,
                                                 const std::string& type,
                                                 bool as_printed) {
  cplx u1 = chi.u[0].unit(), u2 = chi.u[1].unit(), u3 = chi.u[2].unit();
  cplx cu1 = std::conj(u1), cu2 = std::conj(u2), cu3 = std::conj(u3);
  bool u1_is_one = same_turn(chi.u[0], Turn());
  std::vector<G90TableRow> rows;
  auto add = [&](const std::string& l, CMatrix a, CMatrix b, CMatrix c) {
    rows.push_back({l, std::move(a), std::move(b), std::move(c)});
  };

  if (type == "1-T1") {
    add("pi1", mk(1, {-1}), mk(1, {-1}), mk(1, {u3}));
    add("pi2", mk(1, {-1}), mk(1, {1}), mk(1, {u3}));
    add("pi3", mk(1, {1}), mk(1, {-1}), mk(1, {u3}));
    add("pi4", mk(1, {1}), mk(1, {1}), mk(1, {u3}));
    add("pi5", mk(2, {0, -1, 1, 0}), mk(2, {1, 0, 0, -1}), scalar_mat(2, u3));
  } else if (type == "1-T2") {
    add("pi1", mk(1, {I}), mk(1, {I}), mk(1, {u3}));
    add("pi2", mk(1, {-I}), mk(1, {I}), mk(1, {u3}));
    add("pi3", mk(1, {-I}), mk(1, {-I}), mk(1, {u3}));
    bool printed_duplicate = as_printed && same_turn(chi.u[2], Turn::rational(1, 2));
    if (printed_duplicate)
      add("pi4", mk(1, {-I}), mk(1, {-I}), mk(1, {u3}));  // repeats pi3 verbatim
    else
      add("pi4", mk(1, {I}), mk(1, {-I}), mk(1, {u3}));
    add("pi5", mk(2, {0, 1, 1, 0}), mk(2, {-I, 0, 0, I}), scalar_mat(2, u3));
  } else if (type == "2-T1") {
    add("pi1",
        mk(4, {0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0}),
        mk(4, {0, -I, 0, 0, -I, 0, 0, 0, 0, 0, 0, I, 0, 0, -I, 0}),
        scalar_mat(4, u3));
  } else if (type == "2-T2") {
    add("pi1",
        mk(4, {0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0}),
        mk(4, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0}),
        scalar_mat(4, u3));
  } else if (type == "2-T3") {
    CMatrix c = diag({u3, cu3});
    if (u1_is_one) {
      CMatrix b = mk(2, {0, 1, 1, 0});
      add("pi1", diag({-I, I}), b, c);
      add("pi2", diag({I, -I}), b, c);
      add("pi3", diag({-1, -1}), b, c);
      add("pi4", diag({1, 1}), b, c);
    } else {
      CMatrix b = mk(2, {0, -1, 1, 0});
      add("pi1", diag({-I, -I}), b, c);
      add("pi2", diag({I, I}), b, c);
      add("pi3", diag({-1, 1}), b, c);
      add("pi4", diag({1, -1}), b, c);
    }
  } else if (type == "4-T1") {
    CMatrix a = mk(4, {0, 1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0});
    add("pi1", a,
        mk(4, {0, 0, -cu1, 0, 0, 0, 0, -1, -1, 0, 0, 0, 0, -u1, 0, 0}),
        scalar_mat(4, u3));
    add("pi2", a,
        mk(4, {0, 0, cu1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, u1, 0, 0}),
        scalar_mat(4, u3));
  } else if (type == "4-T2") {
    CMatrix a = mk(4, {0, 1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0});
    add("pi1", a,
        mk(4, {0, 1, 0, 0, u1, 0, 0, 0, 0, 0, 0, cu1, 0, 0, 1, 0}),
        scalar_mat(4, u3));
    add("pi2", a,
        mk(4, {0, -1, 0, 0, -u1, 0, 0, 0, 0, 0, 0, -cu1, 0, 0, -1, 0}),
        scalar_mat(4, u3));
  } else if (type == "4-T3") {
    cplx r = sqrt_principal(chi.u[0]), rc = std::conj(r);
    bool u2_is_one = same_turn(chi.u[1], Turn());
    if (u2_is_one) {
      add("pi1",
          mk(4, {0, 1, 0, 0, 0, 0, 0, r, 1, 0, 0, 0, 0, 0, rc, 0}),
          mk(4, {0, 0, 0, 1, 0, r, 0, 0, 0, 0, rc, 0, 1, 0, 0, 0}),
          scalar_mat(4, u3));
      add("pi2",
          mk(4, {0, 1, 0, 0, 0, 0, 0, -r, 1, 0, 0, 0, 0, 0, -rc, 0}),
          mk(4, {0, 0, 0, 1, 0, -r, 0, 0, 0, 0, -rc, 0, 1, 0, 0, 0}),
          scalar_mat(4, u3));
    } else {
      add("pi1",
          mk(4, {0, 1, 0, 0, 0, 0, 0, -r, 1, 0, 0, 0, 0, 0, -rc, 0}),
          mk(4, {0, 0, 0, 1, 0, -r, 0, 0, 0, 0, rc, 0, -1, 0, 0, 0}),
          scalar_mat(4, u3));
      add("pi2",
          mk(4, {0, 1, 0, 0, 0, 0, 0, r, 1, 0, 0, 0, 0, 0, rc, 0}),
          mk(4, {0, 0, 0, 1, 0, r, 0, 0, 0, 0, -rc, 0, -1, 0, 0, 0}),
          scalar_mat(4, u3));
    }
  } else if (type == "4-T4") {
    cplx s = sqrt_principal(chi.u[1]), sc = std::conj(s);
    CMatrix a = mk(4, {0, 1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0});
    if (u1_is_one) {
      add("pi1", a,
          mk(4, {-sc, 0, 0, 0, 0, 0, -sc, 0, 0, -s, 0, 0, 0, 0, 0, -s}),
          scalar_mat(4, u3));
      add("pi2", a,
          mk(4, {sc, 0, 0, 0, 0, 0, sc, 0, 0, s, 0, 0, 0, 0, 0, s}),
          scalar_mat(4, u3));
    } else {
      add("pi1", a,
          mk(4, {-sc, 0, 0, 0, 0, 0, sc, 0, 0, -s, 0, 0, 0, 0, 0, s}),
          scalar_mat(4, u3));
      add("pi2", a,
          mk(4, {sc, 0, 0, 0, 0, 0, -sc, 0, 0, s, 0, 0, 0, 0, 0, -s}),
          scalar_mat(4, u3));
    }
  } else if (type == "4-T5") {
    CMatrix c = diag({u3, u3, cu3, cu3});
    if (u1_is_one) {
      add("pi1",
          mk(4, {0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}),
          mk(4, {0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0}), c);
      add("pi2",
          mk(4, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0}),
          mk(4, {0, 0, -1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, -1, 0, 0}), c);
    } else {
      add("pi1",
          mk(4, {0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}),
          mk(4, {0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0}), c);
      add("pi2",
          mk(4, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0}),
          mk(4, {0, 0, 1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 1, 0, 0}), c);
    }
  } else if (type == "8") {
    add("pi1",
        mk(8, {0, 0, 1, 0, 0, 0, 0, 0,
               1, 0, 0, 0, 0, 0, 0, 0,
               0, 0, 0, 0, 1, 0, 0, 0,
               0, 0, 0, 0, 0, 0, 1, 0,
               0, 1, 0, 0, 0, 0, 0, 0,
               0, 0, 0, 1, 0, 0, 0, 0,
               0, 0, 0, 0, 0, 0, 0, 1,
               0, 0, 0, 0, 0, 1, 0, 0}),
        mk(8, {0, 0, 0, cu2, 0, 0, 0, 0,
               0, 0, 0, 0, 0, 0, 1, 0,
               0, 0, 0, 0, 0, u1 * cu2, 0, 0,
               1, 0, 0, 0, 0, 0, 0, 0,
               0, 0, 0, 0, 0, 0, 0, u1,
               0, 0, u2, 0, 0, 0, 0, 0,
               0, cu1, 0, 0, 0, 0, 0, 0,
               0, 0, 0, 0, cu1 * u2, 0, 0, 0}),
        diag({u3, u3, u3, cu3, u3, cu3, cu3, cu3}));
  } else {
    fail("no reference rows for orbit type '" + type + "'");
  }
  return rows;
}

std::vector<G90TableRow> g90_reference_rows(const CrystalGroup& g,
                                            const Character& chi,
                                            bool as_printed) {
  std::string type = classify_orbit_type_90(g, chi);
  return g90_reference_rows_impl(chi, type, as_printed);
}

bool g90_block_has_duplicate_row(const CrystalGroup& g, const Character& chi) {
  return classify_orbit_type_90(g, chi) == "1-T2" &&
         same_turn(chi.u[2], Turn::rational(1, 2));
}

GRep g90_row_as_grep(const CrystalGroup& g, const Character& chi,
                     const G90TableRow& row) {
  if (!g.is_builtin_g90) fail("reference rows require the bundled group-90 datum");
  int n = row.a.rows;
  // lattice generator images: w1 = A B^2 A^{-1}, w2 = B^{-2}, w3 = C
  CMatrix ai = row.a.adjoint(), bi = row.b.adjoint();
  std::vector<CMatrix> w = {row.a.mul(row.b).mul(row.b).mul(ai), bi.mul(bi), row.c};
  std::vector<CMatrix> winv = {w[0].adjoint(), w[1].adjoint(), w[2].adjoint()};

  GRep rep;
  rep.dim = n;
  rep.base_chi = chi;
  CMatrix A = row.a, B = row.b;
  const CrystalGroup* gp = &g;
  rep.eval = [A, B, w, winv, n, gp](const GElement& x) {
    CMatrix out = CMatrix::identity(n);
    for (int j = 0; j < gp->dim; ++j) {
      std::int64_t p = x.n[j];
      const CMatrix& m = p >= 0 ? w[j] : winv[j];
      for (std::int64_t i = 0; i < std::llabs(p); ++i) out = out.mul(m);
    }
    // section words: gamma(a^k b^eps) = A^k B^eps in element order
    static const int kpow[8] = {0, 1, 2, 3, 0, 1, 2, 3};
    static const int bpow[8] = {0, 0, 0, 0, 1, 1, 1, 1};
    for (int i = 0; i < kpow[x.d]; ++i) out = out.mul(A);
    if (bpow[x.d]) out = out.mul(B);
    return out;
  };
  return rep;
}

std::vector<std::string> match_against_reference(const CrystalGroup& g,
                                                 const DualResult& dual,
                                                 bool as_printed) {
  auto rows = g90_reference_rows(g, dual.chi, as_printed);
  std::vector<std::string> out;
  for (const auto& ind : dual.induced) {
    GRep computed = as_grep(ind);
    std::string found;
    for (const auto& row : rows) {
      if (row.a.rows != computed.dim) continue;
      if (equivalent(g, computed, g90_row_as_grep(g, dual.chi, row))) {
        found = row.label;
        break;
      }
    }
    out.push_back(found);
  }
  return out;
}

}  // namespace cdual
