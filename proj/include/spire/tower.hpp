#pragma once

#include <vector>

#include "spire/graphs.hpp"

namespace spire {

// Parameters of the towered graph: a weighted path of L edges hangs from
// every base vertex, with uniform edge weight gamma = sqrt(d/c); the base
// edges keep weight 1 and sit at path level L (the top of each tower is
// level 0).
struct TowerParams {
  int L = 1;
  int c = 2;
  int D = 0;           // c * d
  double gamma = 0.0;  // sqrt(d/c) unless explicitly overridden
};

// L = -1 selects the operating default L = n - 1. gamma_override = 0 selects
// sqrt(d/c).
TowerParams make_tower_params(const BaseGraph& g, int L = -1, int c = 2,
                              double gamma_override = 0.0);

enum class SpectrumSource { Direct, Serf };

// One eigenvalue of the towered adjacency with its top weight: the squared
// overlap of the eigenvector(s) with the basis state at (distinguished
// vertex, level 0). Direct spectra carry one entry per eigenvector
// (channel = -1); secular-solver spectra carry one entry per (channel, root)
// with the channel-aggregated weight.
struct SpectrumEntry {
  double lambda = 0.0;
  double weight = 0.0;
  int channel = -1;
};

struct TowerSpectrum {
  std::vector<SpectrumEntry> entries;
  TowerParams params;
  SpectrumSource source = SpectrumSource::Direct;

  double weight_sum() const;
};

inline int tower_index(int v, int level, int L) { return v * (L + 1) + level; }

// Direct diagonalization is validation-only; larger requests fail loudly
// instead of grinding.
constexpr int kDenseCap = 20000;

// Dense symmetric matrix of the towered graph, dimension n*(L+1), row index
// (v, level) -> v*(L+1) + level. Tower edges carry gamma, base edges carry 1
// between the level-L ends. Throws numeric_error when the dimension exceeds
// the cap.
std::vector<double> build_tower_matrix(const BaseGraph& g,
                                       const TowerParams& p,
                                       int dense_cap = kDenseCap);

// Theory-free ground truth: eigendecompose the towered matrix and read the
// weight of each eigenvector at (distinguished, level 0).
TowerSpectrum direct_spectrum(const BaseGraph& g, const TowerParams& p,
                              int dense_cap = kDenseCap);

// Eigenvalues (ascending) of the (L+1)-point path Hamiltonian with uniform
// off-diagonal gamma and boundary potential mu at the level-L end. This is
// the per-channel block of the towered matrix; all its eigenvalues are
// simple.
std::vector<double> tridiag_reference(double mu, const TowerParams& p);

}  // namespace spire
