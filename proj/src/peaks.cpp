#include "spire/peaks.hpp"

#include <algorithm>
#include <cmath>

#include "spire/serf.hpp"
#include "spire/util.hpp"

namespace spire {

std::vector<double> coarse_scan(const ComplexSeries& series, int top_k) {
  const std::size_t n = series.values.size();
  std::vector<std::pair<double, double>> candidates;  // (value, t)
  for (std::size_t j = 0; j < n; ++j) {
    const double v = std::abs(series.values[j]);
    const double left = (j > 0) ? std::abs(series.values[j - 1]) : -1.0;
    const double right = (j + 1 < n) ? std::abs(series.values[j + 1]) : -1.0;
    if (v > left && v > right) candidates.emplace_back(v, series.times[j]);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  if (static_cast<int>(candidates.size()) > top_k) candidates.resize(top_k);
  std::vector<double> times;
  times.reserve(candidates.size());
  for (const auto& c : candidates) times.push_back(c.second);
  return times;
}

namespace {

// argmax of |f_A - f_B| on the lattice {i * dt : ilo <= i <= ihi}; the first
// maximum wins, so ties break toward smaller t.
std::pair<double, double> lattice_argmax(const TowerSpectrum& a,
                                         const TowerSpectrum& b,
                                         long long ilo, long long ihi,
                                         double dt) {
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(ihi - ilo + 1));
  for (long long i = ilo; i <= ihi; ++i) ts.push_back(double(i) * dt);
  const ComplexSeries diff = difference_signal(a, b, ts);
  double best_v = -1.0, best_t = 0.0;
  for (std::size_t j = 0; j < diff.values.size(); ++j) {
    const double v = std::abs(diff.values[j]);
    if (v > best_v) {
      best_v = v;
      best_t = diff.times[j];
    }
  }
  return {best_t, best_v};
}

}  // namespace

std::pair<double, double> refine_peak(const TowerSpectrum& a,
                                      const TowerSpectrum& b, double t0,
                                      double horizon, double dt_fine) {
  double t = t0;
  double v = 0.0;
  for (const double halfwidth : {10.0, 5.0}) {
    const long long ilo =
        std::max(0ll, std::llround((t - halfwidth) / dt_fine));
    const long long ihi = std::min(std::llround(horizon / dt_fine),
                                   std::llround((t + halfwidth) / dt_fine));
    std::tie(t, v) = lattice_argmax(a, b, ilo, ihi, dt_fine);
  }
  return {t, v};
}

PeakResult distinguishability(const BaseGraph& gA, const BaseGraph& gB,
                              const TowerParams& p, const PeakOptions& opt) {
  if (gA.n != gB.n || gA.d != gB.d) {
    throw usage_error("graph pair must share vertex count and degree");
  }
  const auto spectrum_of = [&](const BaseGraph& g) {
    return (opt.method == SpectrumSource::Serf)
               ? serf_spectrum(g, p, opt.include_out_of_band)
               : direct_spectrum(g, p);
  };
  const TowerSpectrum specA = spectrum_of(gA);
  const TowerSpectrum specB = spectrum_of(gB);

  double horizon = opt.horizon_override;
  if (horizon <= 0.0) {
    if (gA.m <= 0) {
      throw usage_error(
          "custom graph pairs need an explicit horizon (no rail length to "
          "square)");
    }
    horizon = opt.horizon_mult * double(gA.m) * double(gA.m);
  }

  const long long nc = std::llround(horizon / opt.dt_coarse);
  std::vector<double> coarse_times;
  coarse_times.reserve(static_cast<std::size_t>(nc + 1));
  for (long long j = 0; j <= nc; ++j) {
    coarse_times.push_back(double(j) * opt.dt_coarse);
  }
  const ComplexSeries coarse =
      difference_signal(specA, specB, coarse_times);

  PeakResult pr;
  pr.m = gA.m;
  pr.n = gA.n;
  pr.L = p.L;
  pr.gamma = p.gamma;
  pr.delta = opt.delta;
  pr.r = opt.r;
  pr.horizon = horizon;
  pr.source = opt.method;
  pr.parseval = parseval(specA, specB);

  double best_t = 0.0, best_v = -1.0;
  for (const double t0 : coarse_scan(coarse, opt.top_k)) {
    const auto [t, v] = refine_peak(specA, specB, t0, horizon, opt.dt_fine);
    if (v > best_v || (v == best_v && t < best_t)) {
      best_t = t;
      best_v = v;
    }
  }
  if (best_v < 0.0) {
    // No strict local maximum anywhere (identical spectra): the signal is
    // flat zero and the pair is indistinguishable.
    pr.t_star = 0.0;
    pr.dis = 0.0;
    pr.budget_overflow = true;
    pr.n_rep = 0;
    return pr;
  }
  pr.t_star = best_t;
  pr.dis = best_v;
  if (pr.dis > 0.0) {
    pr.n_rep = measurement_budget(pr.dis, opt.delta, opt.r);
  } else {
    pr.budget_overflow = true;
    pr.n_rep = 0;
  }
  return pr;
}

double inv_norm_cdf(double prob) {
  if (!(prob > 0.0 && prob < 1.0)) {
    throw usage_error("inv_norm_cdf requires prob strictly inside (0, 1)");
  }
  // Wichura's PPND16 rational minimax fits on three regions.
  const double q = prob - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
              6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
            1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
          1.3314166789178437745e2) * r + 3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return q * num / den;
  }
  double r = (q < 0.0) ? prob : 1.0 - prob;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
    x = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    x = num / den;
  }
  return (q < 0.0) ? -x : x;
}

long long measurement_budget(double dis, double delta, int r) {
  if (r < 2) throw usage_error("measurement budget requires r >= 2");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw usage_error("measurement budget requires delta strictly in (0, 1)");
  }
  if (!(dis > 0.0)) {
    throw numeric_error(
        "measurement budget is unbounded for zero distinguishability");
  }
  double z = inv_norm_cdf(1.0 - delta / (r - 1));
  z = std::llround(z * 1000.0) / 1000.0;
  const double shots = std::ceil(2.0 * z * z / (dis * dis));
  if (!(shots < 9.0e18)) {
    throw numeric_error("measurement budget overflows a 64-bit count");
  }
  return std::max(1ll, static_cast<long long>(shots));
}

std::string peak_json(const PeakResult& pr) {
  const double n2par = double(pr.n) * double(pr.n) * pr.parseval;
  const double ratio =
      (pr.parseval > 0.0) ? pr.dis * pr.dis / pr.parseval : 0.0;
  std::string s = "{";
  s += "\"m\": " + std::to_string(pr.m);
  s += ", \"n\": " + std::to_string(pr.n);
  s += ", \"L\": " + std::to_string(pr.L);
  s += ", \"gamma\": " + fmt9(pr.gamma);
  s += ", \"t_star\": " + fmt9(pr.t_star);
  s += ", \"dis\": " + fmt9(pr.dis);
  s += ", \"parseval\": " + fmt9(pr.parseval);
  s += ", \"n2_parseval\": " + fmt9(n2par);
  s += ", \"dis2_over_parseval\": " + fmt9(ratio);
  s += ", \"n_rep\": " + std::to_string(pr.n_rep);
  s += ", \"budget_overflow\": ";
  s += pr.budget_overflow ? "true" : "false";
  s += ", \"delta\": " + fmt9(pr.delta);
  s += ", \"r\": " + std::to_string(pr.r);
  s += ", \"horizon\": " + fmt9(pr.horizon);
  s += ", \"spectra_source\": ";
  s += (pr.source == SpectrumSource::Serf) ? "\"serf\"" : "\"direct\"";
  s += ", \"seedless\": true}";
  return s;
}

}  // namespace spire
