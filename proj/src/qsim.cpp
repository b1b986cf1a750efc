#include "spire/qsim.hpp"

#include <cmath>

#include "spire/serf.hpp"
#include "spire/util.hpp"

namespace spire {

AmplitudeEstimate hadamard_shots(std::complex<double> f_true, long long n_rep,
                                 std::uint64_t seed) {
  if (std::abs(f_true) > 1.0 + 1e-9) {
    throw numeric_error("return amplitude modulus exceeds 1");
  }
  if (n_rep < 1) throw usage_error("hadamard_shots needs n_rep >= 1");
  Rng rng(seed);
  const double p_real = 0.5 * (1.0 + f_true.real());
  const double p_imag = 0.5 * (1.0 + f_true.imag());
  AmplitudeEstimate est;
  est.n_rep = n_rep;
  for (long long s = 0; s < n_rep; ++s) {
    est.plus_real += (rng.canonical() < p_real);
  }
  for (long long s = 0; s < n_rep; ++s) {
    est.plus_imag += (rng.canonical() < p_imag);
  }
  est.value = {2.0 * double(est.plus_real) / double(n_rep) - 1.0,
               2.0 * double(est.plus_imag) / double(n_rep) - 1.0};
  return est;
}

std::size_t decide(const std::vector<std::complex<double>>& predictions,
                   std::complex<double> estimate) {
  if (predictions.size() < 2) {
    throw usage_error("decide needs at least two predictions");
  }
  std::size_t best = 0;
  double best_d = std::norm(predictions[0] - estimate);
  for (std::size_t j = 1; j < predictions.size(); ++j) {
    const double d = std::norm(predictions[j] - estimate);
    if (d < best_d) {  // strict: ties keep the lower index
      best_d = d;
      best = j;
    }
  }
  return best;
}

TrialSummary trial_success_rate(const BaseGraph& gA, const BaseGraph& gB,
                                const TowerParams& p,
                                const TrialOptions& opt) {
  if (opt.trials < 1) throw usage_error("trials must be positive");
  if (!(opt.nrep_mult > 0.0)) throw usage_error("nrep-mult must be positive");

  TrialSummary summary;
  PeakOptions popt;
  popt.delta = opt.delta;
  popt.r = opt.r;
  summary.peak = distinguishability(gA, gB, p, popt);

  const TowerSpectrum specA = serf_spectrum(gA, p);
  const TowerSpectrum specB = serf_spectrum(gB, p);
  const std::vector<double> at_tstar{summary.peak.t_star};
  summary.predictions = {return_amplitude(specA, at_tstar).values[0],
                         return_amplitude(specB, at_tstar).values[0]};

  summary.n_rep_used =
      summary.peak.budget_overflow
          ? 1
          : std::max<long long>(
                1, static_cast<long long>(
                       std::ceil(double(summary.peak.n_rep) * opt.nrep_mult)));

  summary.outcomes.reserve(static_cast<std::size_t>(2 * opt.trials));
  for (long long trial = 0; trial < opt.trials; ++trial) {
    for (int truth = 0; truth < 2; ++truth) {
      const std::uint64_t run_index =
          2 * static_cast<std::uint64_t>(trial) +
          static_cast<std::uint64_t>(truth);
      const AmplitudeEstimate est = hadamard_shots(
          summary.predictions[static_cast<std::size_t>(truth)],
          summary.n_rep_used, opt.seed ^ run_index);
      const int decision =
          static_cast<int>(decide(summary.predictions, est.value));
      const bool correct = decision == truth;
      summary.correct += correct;
      summary.outcomes.push_back(
          {trial, truth, decision, est.value, correct});
    }
  }
  summary.runs = 2 * opt.trials;
  summary.success_rate = double(summary.correct) / double(summary.runs);
  return summary;
}

std::string trial_json(const TrialOutcome& o) {
  std::string s = "{";
  s += "\"trial\": " + std::to_string(o.trial);
  s += ", \"truth\": " + std::to_string(o.truth);
  s += ", \"decision\": " + std::to_string(o.decision);
  s += ", \"f_tilde_re\": " + fmt9(o.estimate.real());
  s += ", \"f_tilde_im\": " + fmt9(o.estimate.imag());
  s += ", \"correct\": ";
  s += o.correct ? "true" : "false";
  s += "}";
  return s;
}

}  // namespace spire
