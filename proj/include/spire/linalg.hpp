#pragma once

#include <vector>

namespace spire {

// Eigendecomposition of a real symmetric matrix. Eigenvalues ascending;
// eigenvectors stored column-major: vectors[k * n + i] is component i of the
// eigenvector belonging to values[k]. Sign/phase of each vector is arbitrary.
struct EighResult {
  int n = 0;
  std::vector<double> values;
  std::vector<double> vectors;

  double vec(int component, int k) const {
    return vectors[static_cast<std::size_t>(k) * n + component];
  }
};

// Production dense symmetric eigensolver (LAPACK dsyevd, divide and conquer).
// `a` is the full n*n matrix; symmetric input makes the row/column-major
// distinction immaterial. After solving, the decomposition is verified
// against the residual contract ||A v_k - lambda_k v_k||_2 <= tol_scale*||A||,
// with ||A|| the max-absolute-row-sum norm; every vector is checked up to
// n = 512 and a deterministic 64-vector sample above that. Throws
// numeric_error on LAPACK failure or residual violation.
EighResult eigh_dense(const std::vector<double>& a, int n,
                      double tol_scale = 1e-10);

// Independent reference eigensolver: cyclic Jacobi rotations. Quadratically
// convergent but O(n^3) per sweep with large constants -- used by tests to
// cross-check eigh_dense wiring on small matrices, never on the hot path.
EighResult eigh_jacobi(const std::vector<double>& a, int n);

// Max-absolute-row-sum norm of a dense n*n matrix.
double inf_norm(const std::vector<double>& a, int n);

// max_k ||A v_k - lambda_k v_k||_2 over the checked eigenpairs (all pairs if
// n <= 512, else a 64-pair sample). Exposed for tests.
double eigh_residual(const std::vector<double>& a, const EighResult& r);

}  // namespace spire
