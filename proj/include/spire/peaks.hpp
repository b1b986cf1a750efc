#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spire/signal.hpp"

namespace spire {

// Outcome of the peak-distinguishability pipeline for one graph pair.
struct PeakResult {
  int m = 0;
  int n = 0;
  int L = 0;
  double gamma = 0.0;
  double t_star = 0.0;
  double dis = 0.0;        // max_t |f_A(t) - f_B(t)| over the horizon grid
  double parseval = 0.0;
  long long n_rep = 0;     // shots per branch; 0 when budget_overflow
  bool budget_overflow = false;  // dis == 0: no finite budget exists
  double delta = 0.05;
  int r = 2;
  double horizon = 0.0;
  SpectrumSource source = SpectrumSource::Serf;
};

struct PeakOptions {
  double delta = 0.05;
  int r = 2;
  double horizon_mult = 1.0;   // horizon = horizon_mult * m^2
  double horizon_override = 0.0;  // > 0: explicit horizon (custom graphs)
  double dt_coarse = 0.5;
  double dt_fine = 0.01;
  int top_k = 5;
  SpectrumSource method = SpectrumSource::Serf;
  bool include_out_of_band = false;
};

// Grid times of the strict local maxima of |series|, strongest first (ties
// broken toward smaller t), truncated to top_k. Boundary points compete
// against their single neighbor. A constant-zero series has no strict
// maxima and yields an empty list.
std::vector<double> coarse_scan(const ComplexSeries& series, int top_k);

// Two-stage refinement around a coarse candidate: evaluate |f_A - f_B| on
// the dt_fine lattice over [t0 - 10, t0 + 10] clipped to [0, horizon], move
// to the argmax (first maximum), repeat with half-width 5. Returns
// (t_star, dis) on the fine lattice.
std::pair<double, double> refine_peak(const TowerSpectrum& a,
                                      const TowerSpectrum& b, double t0,
                                      double horizon, double dt_fine = 0.01);

// Full pipeline: spectra (secular solver by default), coarse scan on the
// dt_coarse grid over [0, horizon], refinement of the top_k candidates,
// Parseval sum and measurement budget. Both graphs must share (n, d).
PeakResult distinguishability(const BaseGraph& gA, const BaseGraph& gB,
                              const TowerParams& p,
                              const PeakOptions& opt = {});

// Standard-normal quantile (Wichura's PPND16 rational approximation,
// |error| ~ 1e-15, far inside the 1e-8 contract). Rejects prob outside (0,1).
double inv_norm_cdf(double prob);

// ceil(2 z^2 / dis^2) shots per branch with z = inv_norm_cdf(1 - delta/(r-1))
// rounded to three decimals (the tabulated-quantile convention; this also
// reproduces the reference budgets exactly and keeps the integer output
// stable across platforms). At least 1; throws numeric_error when dis = 0.
long long measurement_budget(double dis, double delta, int r);

// One-line JSON rendering with 9-significant-digit floats.
std::string peak_json(const PeakResult& pr);

}  // namespace spire
