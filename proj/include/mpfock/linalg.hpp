#pragma once

#include "mpfock/types.hpp"

namespace mpfock {

Matrix kron(const Matrix& a, const Matrix& b);

// Eigenvalues of a Hermitian matrix, ascending.  Structurally zero rows are
// pruned first and the remaining support is split into connected components,
// so block-sparse inputs (diagonal, sector-confined, partial transposes of
// Schmidt-sparse states) never hit a full dense solve.  Pruned dimensions
// come back as explicit zeros, so the result always has h.rows() entries.
RealVector hermitian_eigenvalues(const Matrix& h);

double min_hermitian_eigenvalue(const Matrix& h);

namespace detail {
// full dense solve (LAPACK zheev when available, Eigen otherwise)
RealVector dense_hermitian_eigenvalues(const Matrix& h);
}  // namespace detail

}  // namespace mpfock
