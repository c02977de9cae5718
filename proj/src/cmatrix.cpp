#include "cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cdual {

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::mul(const CMatrix& o) const {
  if (cols != o.rows) fail("matrix product shape mismatch");
  CMatrix r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      cplx v = (*this)(i, k);
      if (v == cplx(0.0)) continue;
      for (int j = 0; j < o.cols; ++j) r(i, j) += v * o(k, j);
    }
  return r;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMatrix CMatrix::scaled(cplx s) const {
  CMatrix r = *this;
  for (auto& v : r.a) v *= s;
  return r;
}

CMatrix CMatrix::add(const CMatrix& o) const {
  CMatrix r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
  return r;
}

CMatrix CMatrix::sub(const CMatrix& o) const {
  CMatrix r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
  return r;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < std::min(rows, cols); ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

bool CMatrix::is_unitary(double tol) const {
  if (rows != cols) return false;
  return max_abs_diff(mul(adjoint()), identity(rows)) <= tol;
}

bool CMatrix::is_hermitian(double tol) const {
  if (rows != cols) return false;
  return max_abs_diff(*this, adjoint()) <= tol;
}

bool CMatrix::is_diagonal(double tol) const {
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (i != j && std::abs((*this)(i, j)) > tol) return false;
  return true;
}

CMatrix CMatrix::block(int i0, int j0, int r, int c) const {
  CMatrix b(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
  return b;
}

void CMatrix::set_block(int i0, int j0, const CMatrix& b) {
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
}

void CMatrix::orthonormalize_columns() {
  for (int j = 0; j < cols; ++j) {
    for (int k = 0; k < j; ++k) {
      cplx dot = 0.0;
      for (int i = 0; i < rows; ++i) dot += std::conj((*this)(i, k)) * (*this)(i, j);
      for (int i = 0; i < rows; ++i) (*this)(i, j) -= dot * (*this)(i, k);
    }
    double nrm = 0.0;
    for (int i = 0; i < rows; ++i) nrm += std::norm((*this)(i, j));
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) fail("orthonormalize: rank-deficient columns");
    for (int i = 0; i < rows; ++i) (*this)(i, j) /= nrm;
  }
}

double max_abs_diff(const CMatrix& x, const CMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) fail("matrix diff shape mismatch");
  double m = 0.0;
  for (size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
  return m;
}

EigResult hermitian_eig(const CMatrix& m, double tol_mat) {
  if (m.rows != m.cols) fail("not Hermitian");
  if (!m.is_hermitian(tol_mat)) fail("not Hermitian");
  int n = m.rows;
  CMatrix A = m;
  // symmetrize so the iteration sees an exactly Hermitian matrix
  for (int i = 0; i < n; ++i) {
    A(i, i) = cplx(A(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      cplx s = 0.5 * (A(i, j) + std::conj(A(j, i)));
      A(i, j) = s;
      A(j, i) = std::conj(s);
    }
  }
  CMatrix V = CMatrix::identity(n);
  double scale = std::max(1.0, A.max_abs());

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(A(p, q)));
    if (off <= 1e-14 * scale) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        cplx apq = A(p, q);
        double r = std::abs(apq);
        if (r <= 1e-300) continue;
        cplx phase = apq / r;  // apq = r * phase
        double app = A(p, p).real();
        double aqq = A(q, q).real();
        double tau = (aqq - app) / (2.0 * r);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        // J columns: (p,q) <- (c*p - s*conj(phase)... apply from the right:
        //   col_p' = c*col_p - s*phase*col_q ... derived so (J^H A J)(p,q)=0
        cplx jpq = s * phase;        // J(p,q)
        cplx jqp = -s * std::conj(phase);  // J(q,p)
        // A <- J^H A J : first columns, then rows
        for (int i = 0; i < n; ++i) {
          cplx aip = A(i, p), aiq = A(i, q);
          A(i, p) = aip * c + aiq * jqp;
          A(i, q) = aip * jpq + aiq * c;
        }
        for (int j = 0; j < n; ++j) {
          cplx apj = A(p, j), aqj = A(q, j);
          A(p, j) = c * apj + std::conj(jqp) * aqj;
          A(q, j) = std::conj(jpq) * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          cplx vip = V(i, p), viq = V(i, q);
          V(i, p) = vip * c + viq * jqp;
          V(i, q) = vip * jpq + viq * c;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return A(i, i).real() < A(j, j).real();
  });

  EigResult res;
  res.eigenvalues.resize(n);
  res.vectors = CMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    res.eigenvalues[j] = A(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) res.vectors(i, j) = V(i, order[j]);
  }
  return res;
}

}  // namespace cdual
