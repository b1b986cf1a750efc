#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "spire/peaks.hpp"
#include "spire/serf.hpp"
#include "spire/util.hpp"

using namespace spire;

namespace {

ComplexSeries series_from_magnitudes(const std::vector<double>& mags) {
  ComplexSeries s;
  for (std::size_t j = 0; j < mags.size(); ++j) {
    s.times.push_back(double(j));
    s.values.emplace_back(mags[j], 0.0);
  }
  return s;
}

// Standard normal quantile via bisection on erfc; independent of the
// production rational approximation.
double quantile_oracle(double p) {
  double lo = -10.0, hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * std::erfc(-mid / std::sqrt(2.0)) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("coarse scan keeps strict local maxima, strongest first") {
  const ComplexSeries s =
      series_from_magnitudes({0.1, 0.5, 0.2, 0.7, 0.7, 0.3, 0.9});
  const std::vector<double> peaks = coarse_scan(s, 5);
  // plateau at j=3,4 has no strict maximum; boundary j=6 beats its neighbor
  REQUIRE(peaks.size() == 2);
  CHECK(peaks[0] == 6.0);
  CHECK(peaks[1] == 1.0);
}

TEST_CASE("coarse scan breaks value ties toward earlier times") {
  const ComplexSeries s = series_from_magnitudes({0.0, 5.0, 0.0, 5.0, 0.0});
  const std::vector<double> peaks = coarse_scan(s, 1);
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0] == 1.0);
}

TEST_CASE("a flat series has no strict maxima") {
  CHECK(coarse_scan(series_from_magnitudes({0.4, 0.4, 0.4, 0.4}), 5).empty());
  CHECK(coarse_scan(series_from_magnitudes({}), 5).empty());
}

TEST_CASE("refinement locks onto the analytic peak of a two-line signal") {
  // f_A - f_B = 0.6 e^{-it} - 0.6 e^{it} = -1.2 i sin t, peaks of 1.2 at
  // pi/2 + k pi.
  TowerSpectrum a, b;
  a.params = b.params = TowerParams{7, 2, 6, std::sqrt(1.5)};
  a.entries = {{1.0, 0.6, -1}};
  b.entries = {{-1.0, 0.6, -1}};
  const auto [t, v] = refine_peak(a, b, 1.5, 16.0);
  CHECK(t == doctest::Approx(1.57).epsilon(1e-12));
  CHECK(v == doctest::Approx(1.2 * std::sin(1.57)).epsilon(1e-12));
}

TEST_CASE("quantile matches an erfc bisection oracle across the unit interval") {
  CHECK(std::fabs(inv_norm_cdf(0.95) - 1.644853626951472) <= 1e-12);
  CHECK(std::fabs(inv_norm_cdf(0.975) - 1.959963984540054) <= 1e-12);
  CHECK(std::fabs(inv_norm_cdf(0.9875) - 2.241402727604947) <= 1e-12);
  CHECK(std::fabs(inv_norm_cdf(0.01) - (-2.326347874040841)) <= 1e-12);
  CHECK(std::fabs(inv_norm_cdf(0.999) - 3.090232306167813) <= 1e-12);
  CHECK(inv_norm_cdf(0.5) == 0.0);

  for (int k = 1; k < 200; ++k) {
    const double p = k / 200.0;
    REQUIRE(std::fabs(inv_norm_cdf(p) - quantile_oracle(p)) <= 1e-12);
    // antisymmetry about the median
    REQUIRE(std::fabs(inv_norm_cdf(p) + inv_norm_cdf(1.0 - p)) <= 1e-12);
  }
  // extreme tails keep eight digits (the 1 - p parameterization saturates)
  CHECK(std::fabs(inv_norm_cdf(1e-9) - (-5.997807015007979)) <= 1e-8);
  CHECK(std::fabs(inv_norm_cdf(1.0 - 1e-9) - 5.997807015007979) <= 1e-8);

  CHECK_THROWS_AS(inv_norm_cdf(0.0), usage_error);
  CHECK_THROWS_AS(inv_norm_cdf(1.0), usage_error);
  CHECK_THROWS_AS(inv_norm_cdf(-0.25), usage_error);
}

TEST_CASE("measurement budget uses the three-decimal tabulated quantile") {
  // delta = 0.05, r = 2: z rounds to 1.645, so dis = 1 needs
  // ceil(2 * 1.645^2) = 6 shots.
  CHECK(measurement_budget(1.0, 0.05, 2) == 6);
  CHECK(measurement_budget(0.345226626207384, 0.05, 2) == 46);
  CHECK(measurement_budget(0.280533630714098, 0.05, 2) == 69);
  CHECK(measurement_budget(0.040551982463243, 0.05, 2) == 3292);
  // r = 3 halves the per-branch failure budget: z(0.975) -> 1.96
  CHECK(measurement_budget(1.0, 0.05, 3) == 8);
  // far above any need: a single shot floor
  CHECK(measurement_budget(2.0, 0.5, 2) == 1);
}

TEST_CASE("measurement budget rejects degenerate requests") {
  CHECK_THROWS_AS(measurement_budget(0.5, 0.05, 1), usage_error);
  CHECK_THROWS_AS(measurement_budget(0.5, 0.0, 2), usage_error);
  CHECK_THROWS_AS(measurement_budget(0.5, 1.0, 2), usage_error);
  CHECK_THROWS_AS(measurement_budget(0.0, 0.05, 2), numeric_error);
  CHECK_THROWS_AS(measurement_budget(1e-12, 0.05, 2), numeric_error);
}

TEST_CASE("the pipeline reproduces the m=4 reference point") {
  const BaseGraph gy = prism(4);
  const BaseGraph gm = moebius(4);
  const TowerParams p = make_tower_params(gy);
  const PeakResult pr = distinguishability(gy, gm, p);
  CHECK(pr.m == 4);
  CHECK(pr.n == 8);
  CHECK(pr.L == 7);
  CHECK(pr.horizon == 16.0);
  CHECK(std::fabs(pr.dis - 0.345226626207384) <= 1e-9);
  CHECK(std::fabs(pr.t_star - 14.84) <= 1e-9);
  CHECK(std::fabs(pr.parseval - 3.847136916329971e-02) <= 1e-12);
  CHECK(pr.n_rep == 46);
  CHECK_FALSE(pr.budget_overflow);
  CHECK(pr.source == SpectrumSource::Serf);
}

TEST_CASE("the pipeline reproduces the m=5 reference point") {
  const PeakResult pr = distinguishability(prism(5), moebius(5),
                                           make_tower_params(prism(5)));
  CHECK(std::fabs(pr.dis - 0.280533630714098) <= 1e-9);
  CHECK(std::fabs(pr.t_star - 18.84) <= 1e-9);
  CHECK(std::fabs(pr.parseval - 2.564886917079766e-02) <= 1e-12);
  CHECK(pr.n_rep == 69);
}

TEST_CASE("direct diagonalization lands within a few parts in 1e6 of serf") {
  PeakOptions opt;
  opt.method = SpectrumSource::Direct;
  const PeakResult pr = distinguishability(prism(4), moebius(4),
                                           make_tower_params(prism(4)), opt);
  CHECK(pr.source == SpectrumSource::Direct);
  CHECK(std::fabs(pr.dis - 0.345224629952670) <= 1e-9);
  CHECK(std::fabs(pr.t_star - 14.84) <= 1e-9);
  CHECK(std::fabs(pr.dis - 0.345226626207384) <= 1e-5);
}

TEST_CASE("halving the horizon at m=8 collapses the peak") {
  PeakOptions opt;
  opt.horizon_mult = 0.5;
  const PeakResult pr = distinguishability(prism(8), moebius(8),
                                           make_tower_params(prism(8)), opt);
  CHECK(pr.horizon == 32.0);
  CHECK(std::fabs(pr.dis - 0.067823851443376) <= 1e-9);
  CHECK(std::fabs(pr.t_star - 29.14) <= 1e-9);
}

TEST_CASE("identical graphs are flagged as budget overflow") {
  const PeakResult pr = distinguishability(prism(4), prism(4),
                                           make_tower_params(prism(4)));
  CHECK(pr.dis == 0.0);
  CHECK(pr.t_star == 0.0);
  CHECK(pr.budget_overflow);
  CHECK(pr.n_rep == 0);
}

TEST_CASE("mismatched pairs and horizonless custom pairs are usage errors") {
  CHECK_THROWS_AS(distinguishability(prism(4), moebius(5),
                                     make_tower_params(prism(4))),
                  usage_error);

  BaseGraph a = prism(4);
  BaseGraph b = moebius(4);
  a.family = b.family = Family::Custom;
  a.m = b.m = 0;
  const TowerParams p = make_tower_params(a);
  CHECK_THROWS_AS(distinguishability(a, b, p), usage_error);

  // with an explicit horizon the custom pair runs through the dense-channel
  // path and reproduces the family result
  PeakOptions opt;
  opt.horizon_override = 16.0;
  const PeakResult pr = distinguishability(a, b, p, opt);
  CHECK(std::fabs(pr.dis - 0.345226626207384) <= 1e-8);
  CHECK(std::fabs(pr.t_star - 14.84) <= 1e-9);
}

TEST_CASE("peak json carries the full parameter echo") {
  PeakResult pr;
  pr.m = 4;
  pr.n = 8;
  pr.L = 7;
  pr.gamma = 1.5;
  pr.t_star = 14.84;
  pr.dis = 0.25;
  pr.parseval = 0.01;
  pr.n_rep = 46;
  pr.delta = 0.05;
  pr.r = 2;
  pr.horizon = 16.0;
  pr.source = SpectrumSource::Serf;
  CHECK(peak_json(pr) ==
        "{\"m\": 4, \"n\": 8, \"L\": 7, \"gamma\": 1.5, \"t_star\": 14.84, "
        "\"dis\": 0.25, \"parseval\": 0.01, \"n2_parseval\": 0.64, "
        "\"dis2_over_parseval\": 6.25, \"n_rep\": 46, "
        "\"budget_overflow\": false, \"delta\": 0.05, \"r\": 2, "
        "\"horizon\": 16, \"spectra_source\": \"serf\", \"seedless\": true}");
}
