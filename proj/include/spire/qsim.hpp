#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "spire/peaks.hpp"

namespace spire {

// Hadamard-test estimate of a return amplitude: n_rep +-1 shots per
// quadrature, each +1 with probability (1 + Re f)/2 (real branch) or
// (1 + Im f)/2 (imaginary branch, phase gate applied).
struct AmplitudeEstimate {
  std::complex<double> value;
  long long n_rep = 0;
  long long plus_real = 0;
  long long plus_imag = 0;
};

// Simulates both quadrature branches from one seeded stream (real branch
// first). The amplitudes fed in are exact, so the only noise is shot noise.
// Rejects |f_true| > 1 + 1e-9.
AmplitudeEstimate hadamard_shots(std::complex<double> f_true, long long n_rep,
                                 std::uint64_t seed);

// Index of the prediction nearest to the estimate in the complex plane;
// ties break toward the lower index.
std::size_t decide(const std::vector<std::complex<double>>& predictions,
                   std::complex<double> estimate);

struct TrialOptions {
  long long trials = 1000;  // per hypothesis; total runs = 2 * trials
  double delta = 0.05;
  int r = 2;
  double nrep_mult = 1.0;  // budget inflation factor for sensitivity checks
  std::uint64_t seed = 1;
};

struct TrialOutcome {
  long long trial = 0;
  int truth = 0;
  int decision = 0;
  std::complex<double> estimate;
  bool correct = false;
};

struct TrialSummary {
  PeakResult peak;
  std::vector<std::complex<double>> predictions;  // f_A(t*), f_B(t*)
  long long n_rep_used = 0;
  long long correct = 0;
  long long runs = 0;
  double success_rate = 0.0;
  std::vector<TrialOutcome> outcomes;
};

// Full decision-layer Monte Carlo: computes the peak pipeline for the pair,
// then for every trial and both true hypotheses simulates a Hadamard-test
// estimate at f_true = f_{G_truth}(t*) and applies the nearest-prediction
// rule. Per-run streams are seeded with seed XOR run_index
// (run_index = 2*trial + truth), so trials are order- and
// schedule-independent. A zero-distinguishability pair (identical graphs)
// falls back to one shot per branch; the decision rule then always picks
// index 0 and the rate sits at exactly 1/2.
TrialSummary trial_success_rate(const BaseGraph& gA, const BaseGraph& gB,
                                const TowerParams& p, const TrialOptions& opt);

// One trial record per line:
// {"trial": ..., "truth": ..., "decision": ..., "f_tilde_re": ...,
//  "f_tilde_im": ..., "correct": ...}
std::string trial_json(const TrialOutcome& o);

}  // namespace spire
