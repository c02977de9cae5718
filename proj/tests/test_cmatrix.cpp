#include <doctest.h>

#include <cstring>

#include "cmatrix.hpp"
#include "rng.hpp"

using namespace cdual;

namespace {

CMatrix random_hermitian(int n, std::uint64_t seed) {
  Rng rng(seed);
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = rng.next_normal();
    for (int j = i + 1; j < n; ++j) {
      cplx v(rng.next_normal(), rng.next_normal());
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("eigensolver on fixed small matrices") {
  EigResult id = hermitian_eig(CMatrix::identity(2));
  CHECK(id.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(id.eigenvalues[1] == doctest::Approx(1.0));

  CMatrix x(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  EigResult pauli = hermitian_eig(x);
  CHECK(pauli.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(pauli.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("eigensolver reconstructs random Hermitian input") {
  for (std::uint64_t seed : {42ull, 7ull, 99ull}) {
    CMatrix m = random_hermitian(6, seed);
    EigResult eig = hermitian_eig(m);
    CHECK(eig.vectors.is_unitary(kTolMat));
    CMatrix d(6, 6);
    for (int i = 0; i < 6; ++i) d(i, i) = eig.eigenvalues[i];
    CMatrix rec = eig.vectors.mul(d).mul(eig.vectors.adjoint());
    CHECK(max_abs_diff(rec, m) <= kTolEig);
    for (int i = 1; i < 6; ++i) CHECK(eig.eigenvalues[i - 1] <= eig.eigenvalues[i]);
  }
}

TEST_CASE("eigensolver is bit-deterministic") {
  CMatrix m = random_hermitian(8, 5);
  EigResult a = hermitian_eig(m);
  EigResult b = hermitian_eig(m);
  CHECK(std::memcmp(a.vectors.a.data(), b.vectors.a.data(),
                    a.vectors.a.size() * sizeof(cplx)) == 0);
  CHECK(std::memcmp(a.eigenvalues.data(), b.eigenvalues.data(),
                    a.eigenvalues.size() * sizeof(double)) == 0);
}

TEST_CASE("eigensolver rejects non-Hermitian input") {
  CMatrix m(2, 2);
  m(0, 1) = 1.0;  // m(1,0) stays 0
  CHECK_THROWS_WITH_AS(hermitian_eig(m), "not Hermitian", std::runtime_error);
}

TEST_CASE("matrix helpers") {
  CMatrix u(2, 2);
  u(0, 0) = cplx(0, 1);
  u(1, 1) = cplx(0, -1);
  CHECK(u.is_unitary());
  CHECK(u.is_diagonal(1e-12));
  CHECK_FALSE(u.is_hermitian());
  CHECK(std::abs(u.trace()) < 1e-15);

  CMatrix b = random_hermitian(5, 1);
  CMatrix blk = b.block(1, 1, 3, 3);
  CHECK(blk.rows == 3);
  CHECK(blk(0, 0) == b(1, 1));

  CMatrix cols(4, 2);
  cols(0, 0) = 2.0;
  cols(1, 1) = cplx(0, 3);
  cols(0, 1) = 1.0;
  cols.orthonormalize_columns();
  CHECK(max_abs_diff(cols.adjoint().mul(cols), CMatrix::identity(2)) < 1e-12);
}
