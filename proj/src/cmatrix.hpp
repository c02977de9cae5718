// Dense complex matrices and a deterministic Hermitian eigensolver.

#ifndef CDUAL_CMATRIX_HPP_
#define CDUAL_CMATRIX_HPP_

#include <complex>
#include <vector>

#include "turn.hpp"

namespace cdual {

using cplx = std::complex<double>;

constexpr double kTolMat = 1e-9;   // structural checks (unitary, Hermitian)
constexpr double kTolEig = 1e-8;   // eigen reconstruction
constexpr double kTolEq = 1e-6;    // representation-equivalence comparisons

struct CMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> a;  // row-major

  CMatrix() = default;
  CMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}

  cplx& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
  const cplx& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }

  static CMatrix identity(int n);
  static CMatrix zero(int r, int c) { return CMatrix(r, c); }

  CMatrix mul(const CMatrix& o) const;
  CMatrix adjoint() const;
  CMatrix scaled(cplx s) const;
  CMatrix add(const CMatrix& o) const;
  CMatrix sub(const CMatrix& o) const;
  cplx trace() const;
  double max_abs() const;

  bool is_unitary(double tol = kTolMat) const;
  bool is_hermitian(double tol = kTolMat) const;
  bool is_diagonal(double tol) const;

  // blocks
  CMatrix block(int i0, int j0, int r, int c) const;
  void set_block(int i0, int j0, const CMatrix& b);

  // orthonormalize columns in place (modified Gram-Schmidt)
  void orthonormalize_columns();
};

double max_abs_diff(const CMatrix& x, const CMatrix& y);

struct EigResult {
  std::vector<double> eigenvalues;  // ascending
  CMatrix vectors;                  // unitary, columns are eigenvectors
};

// Cyclic Jacobi with fixed sweep order; deterministic for a given input.
// Throws "not Hermitian" if the input fails the Hermitian check.
EigResult hermitian_eig(const CMatrix& m, double tol_mat = kTolMat);

}  // namespace cdual

#endif
