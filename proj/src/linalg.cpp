#include "spire/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spire/util.hpp"

namespace spire {

double inf_norm(const std::vector<double>& a, int n) {
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::fabs(a[std::size_t(i) * n + j]);
    best = std::max(best, row);
  }
  return best;
}

double eigh_residual(const std::vector<double>& a, const EighResult& r) {
  const int n = r.n;
  std::vector<int> picks;
  if (n <= 512) {
    picks.resize(n);
    std::iota(picks.begin(), picks.end(), 0);
  } else {
    // Deterministic spread including both spectral edges.
    for (int s = 0; s < 64; ++s) picks.push_back(s * (n - 1) / 63);
  }
  double worst = 0.0;
  std::vector<double> av(n);
  for (int k : picks) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      const double* row = &a[std::size_t(i) * n];
      for (int j = 0; j < n; ++j) acc += row[j] * r.vec(j, k);
      av[i] = acc;
    }
    double norm2 = 0.0;
    const double lam = r.values[k];
    for (int i = 0; i < n; ++i) {
      const double d = av[i] - lam * r.vec(i, k);
      norm2 += d * d;
    }
    worst = std::max(worst, std::sqrt(norm2));
  }
  return worst;
}

namespace {

void check_contract(const std::vector<double>& a, const EighResult& r,
                    double tol_scale) {
  const double norm = inf_norm(a, r.n);
  const double resid = eigh_residual(a, r);
  if (!(resid <= tol_scale * std::max(norm, 1.0))) {
    throw numeric_error("eigensolver residual " + fmt9(resid) +
                        " exceeds contract " + fmt9(tol_scale * norm));
  }
}

}  // namespace

EighResult eigh_dense(const std::vector<double>& a, int n, double tol_scale) {
  if (n <= 0 || a.size() != std::size_t(n) * n) {
    throw usage_error("eigh_dense: matrix size mismatch");
  }
  EighResult r;
  r.n = n;
  r.values.resize(n);
  r.vectors = a;  // dsyevd overwrites the input with the eigenvectors
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, r.vectors.data(), n,
                     r.values.data());
  if (info != 0) {
    throw numeric_error("LAPACK dsyevd failed with info=" +
                        std::to_string(info));
  }
  check_contract(a, r, tol_scale);
  return r;
}

EighResult eigh_jacobi(const std::vector<double>& a, int n) {
  if (n <= 0 || a.size() != std::size_t(n) * n) {
    throw usage_error("eigh_jacobi: matrix size mismatch");
  }
  std::vector<double> m = a;
  std::vector<double> v(std::size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[std::size_t(i) * n + i] = 1.0;
  auto at = [&](std::vector<double>& x, int i, int j) -> double& {
    return x[std::size_t(i) * n + j];
  };

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += at(m, p, q) * at(m, p, q);
    if (off <= 1e-30 * std::max(1.0, inf_norm(a, n))) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(m, p, q);
        if (apq == 0.0) continue;
        const double app = at(m, p, p);
        const double aqq = at(m, q, q);
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0)
                             ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                             : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double mkp = at(m, k, p);
          const double mkq = at(m, k, q);
          at(m, k, p) = c * mkp - s * mkq;
          at(m, k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          const double mpk = at(m, p, k);
          const double mqk = at(m, q, k);
          at(m, p, k) = c * mpk - s * mqk;
          at(m, q, k) = s * mpk + c * mqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = at(v, k, p);
          const double vkq = at(v, k, q);
          at(v, k, p) = c * vkp - s * vkq;
          at(v, k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  EighResult r;
  r.n = n;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return m[std::size_t(i) * n + i] < m[std::size_t(j) * n + j];
  });
  r.values.resize(n);
  r.vectors.resize(std::size_t(n) * n);
  for (int k = 0; k < n; ++k) {
    r.values[k] = m[std::size_t(order[k]) * n + order[k]];
    for (int i = 0; i < n; ++i) {
      r.vectors[std::size_t(k) * n + i] = v[std::size_t(i) * n + order[k]];
    }
  }
  check_contract(a, r, 1e-10);
  return r;
}

}  // namespace spire
