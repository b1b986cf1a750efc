#include "spire/tower.hpp"

#include <cmath>
#include <string>

#include "spire/linalg.hpp"
#include "spire/util.hpp"

namespace spire {

TowerParams make_tower_params(const BaseGraph& g, int L, int c,
                              double gamma_override) {
  if (c != 1 && c != 2) throw usage_error("thickening c must be 1 or 2");
  TowerParams p;
  p.L = (L < 0) ? g.n - 1 : L;
  if (p.L < 1) throw usage_error("tower length L must be at least 1");
  p.c = c;
  p.D = c * g.d;
  p.gamma = (gamma_override > 0.0) ? gamma_override
                                   : std::sqrt(double(g.d) / double(c));
  return p;
}

double TowerSpectrum::weight_sum() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.weight;
  return s;
}

std::vector<double> build_tower_matrix(const BaseGraph& g,
                                       const TowerParams& p, int dense_cap) {
  const long long dim = static_cast<long long>(g.n) * (p.L + 1);
  if (dim > dense_cap) {
    throw numeric_error("towered matrix dimension " + std::to_string(dim) +
                        " exceeds the dense cap " + std::to_string(dense_cap));
  }
  const int N = static_cast<int>(dim);
  std::vector<double> a(std::size_t(N) * N, 0.0);
  auto set = [&](int i, int j, double w) {
    a[std::size_t(i) * N + j] = w;
    a[std::size_t(j) * N + i] = w;
  };
  for (int v = 0; v < g.n; ++v) {
    for (int level = 0; level < p.L; ++level) {
      set(tower_index(v, level, p.L), tower_index(v, level + 1, p.L), p.gamma);
    }
  }
  for (int v = 0; v < g.n; ++v) {
    for (int w = v + 1; w < g.n; ++w) {
      if (g.at(v, w) != 0.0) {
        set(tower_index(v, p.L, p.L), tower_index(w, p.L, p.L), 1.0);
      }
    }
  }
  return a;
}

TowerSpectrum direct_spectrum(const BaseGraph& g, const TowerParams& p,
                              int dense_cap) {
  const std::vector<double> a = build_tower_matrix(g, p, dense_cap);
  const int N = g.n * (p.L + 1);
  const EighResult eig = eigh_dense(a, N);
  const int top = tower_index(g.distinguished, 0, p.L);
  TowerSpectrum spec;
  spec.params = p;
  spec.source = SpectrumSource::Direct;
  spec.entries.reserve(N);
  for (int k = 0; k < N; ++k) {
    const double comp = eig.vec(top, k);
    spec.entries.push_back({eig.values[k], comp * comp, -1});
  }
  return spec;
}

std::vector<double> tridiag_reference(double mu, const TowerParams& p) {
  const int N = p.L + 1;
  std::vector<double> a(std::size_t(N) * N, 0.0);
  for (int i = 0; i + 1 < N; ++i) {
    a[std::size_t(i) * N + i + 1] = p.gamma;
    a[std::size_t(i + 1) * N + i] = p.gamma;
  }
  a[std::size_t(N - 1) * N + N - 1] = mu;
  return eigh_dense(a, N).values;
}

}  // namespace spire
