#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "spire/serf.hpp"
#include "spire/signal.hpp"
#include "spire/util.hpp"

using namespace spire;

namespace {

TowerSpectrum make_spectrum(std::vector<SpectrumEntry> entries) {
  TowerSpectrum spec;
  spec.params.L = 7;
  spec.params.c = 2;
  spec.params.gamma = std::sqrt(1.5);
  spec.entries = std::move(entries);
  return spec;
}

TowerSpectrum random_spectrum(int k, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SpectrumEntry> entries;
  for (int i = 0; i < k; ++i) {
    entries.push_back(
        {6.0 * rng.canonical() - 3.0, rng.canonical() / k, -1});
  }
  return make_spectrum(std::move(entries));
}

}  // namespace

TEST_CASE("a one-line spectrum evolves as a pure phase") {
  const TowerSpectrum spec = make_spectrum({{1.25, 0.8, -1}});
  const std::vector<double> ts{0.0, 0.5, 2.0, 17.0};
  const ComplexSeries s = return_amplitude(spec, ts);
  for (std::size_t j = 0; j < ts.size(); ++j) {
    const std::complex<double> expect =
        0.8 * std::complex<double>(std::cos(1.25 * ts[j]),
                                   -std::sin(1.25 * ts[j]));
    CHECK(std::abs(s.values[j] - expect) <= 1e-15);
  }
}

TEST_CASE("the amplitude at t=0 is the total weight") {
  const BaseGraph g = prism(5);
  const TowerParams p = make_tower_params(g);
  const TowerSpectrum spec = serf_spectrum(g, p);
  const ComplexSeries s = return_amplitude(spec, {0.0});
  CHECK(s.values[0].real() == doctest::Approx(spec.weight_sum()).epsilon(1e-14));
  CHECK(s.values[0].imag() == 0.0);
}

TEST_CASE("an empty spectrum is rejected") {
  const TowerSpectrum spec = make_spectrum({});
  CHECK_THROWS_AS(return_amplitude(spec, {0.0, 1.0}), usage_error);
}

TEST_CASE("block sizes change the accumulation cuts but not the sum") {
  const TowerSpectrum spec = random_spectrum(97, 7);
  std::vector<double> ts;
  for (int j = 0; j < 41; ++j) ts.push_back(0.37 * j);
  const ComplexSeries a = return_amplitude(spec, ts);
  const ComplexSeries b = return_amplitude(spec, ts, SumBlocks{7, 3});
  const ComplexSeries c = return_amplitude(spec, ts, SumBlocks{1, 1});
  double worst = 0.0;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    worst = std::max(worst, std::abs(a.values[j] - b.values[j]));
    worst = std::max(worst, std::abs(a.values[j] - c.values[j]));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("amplitudes are bitwise independent of the worker count") {
  const char* saved = std::getenv("SPIRE_THREADS");
  const std::string saved_copy = saved ? saved : "";

  const TowerSpectrum spec = random_spectrum(211, 13);
  std::vector<double> ts;
  for (int j = 0; j < 500; ++j) ts.push_back(0.05 * j);

  setenv("SPIRE_THREADS", "1", 1);
  const ComplexSeries serial = return_amplitude(spec, ts);
  setenv("SPIRE_THREADS", "5", 1);
  const ComplexSeries threaded = return_amplitude(spec, ts);

  bool identical = true;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    identical = identical && serial.values[j] == threaded.values[j];
  }
  CHECK(identical);

  if (saved)
    setenv("SPIRE_THREADS", saved_copy.c_str(), 1);
  else
    unsetenv("SPIRE_THREADS");
}

TEST_CASE("difference of a series with itself vanishes identically") {
  const TowerSpectrum spec = random_spectrum(31, 3);
  std::vector<double> ts{0.0, 1.0, 2.5};
  const ComplexSeries s = return_amplitude(spec, ts);
  const ComplexSeries d = difference_series(s, s);
  for (const auto& v : d.values) CHECK(v == std::complex<double>(0.0, 0.0));
}

TEST_CASE("difference signals demand matching grids and tower parameters") {
  const TowerSpectrum a = random_spectrum(5, 1);
  TowerSpectrum b = random_spectrum(5, 2);
  const std::vector<double> ts{0.0, 1.0};

  ComplexSeries sa = return_amplitude(a, ts);
  ComplexSeries sb = return_amplitude(b, {0.0, 1.0, 2.0});
  CHECK_THROWS_AS(difference_series(sa, sb), usage_error);

  b.params.gamma = 0.5;  // incompatible operating point
  CHECK_THROWS_AS(difference_signal(a, b, ts), usage_error);
  b.params.gamma = a.params.gamma;
  b.params.L = a.params.L + 1;
  CHECK_THROWS_AS(parseval(a, b), usage_error);
}

TEST_CASE("aggregation merges eigenvalues within the snap tolerance") {
  const TowerSpectrum spec = make_spectrum({{2.0, 0.5, -1},
                                            {1.0, 0.2, -1},
                                            {1.0 + 5e-10, 0.3, -1}});
  const auto groups = aggregate_by_lambda(spec);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].first == 1.0);  // the group keeps its first lambda
  CHECK(groups[0].second == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(groups[1].first == 2.0);
  CHECK(groups[1].second == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("parseval sums squared weight differences over aligned eigenvalues") {
  const TowerSpectrum a = make_spectrum({{0.0, 0.5, -1}, {1.0, 0.5, -1}});
  // matched at 0 (within snap), unmatched at 1 on each side
  const TowerSpectrum b = make_spectrum({{5e-10, 0.25, -1}, {2.0, 0.75, -1}});
  const double par = parseval(a, b);
  const double expect = (0.5 - 0.25) * (0.5 - 0.25) + 0.5 * 0.5 + 0.75 * 0.75;
  CHECK(par == doctest::Approx(expect).epsilon(1e-14));

  CHECK(parseval(a, a) == 0.0);

  // disjoint spectra: every group contributes its full squared weight
  const TowerSpectrum c = make_spectrum({{-1.0, 1.0, -1}});
  CHECK(parseval(a, c) ==
        doctest::Approx(0.25 + 0.25 + 1.0).epsilon(1e-14));
}

TEST_CASE("parseval equals the long-time average of the squared difference") {
  // Time-domain cross-check on the real pipeline: averaging |f_Y - f_M|^2
  // over a horizon of 64 m^2 lands within a few percent of the spectral sum.
  const BaseGraph gy = prism(8);
  const BaseGraph gm = moebius(8);
  const TowerParams p = make_tower_params(gy);
  const TowerSpectrum sy = serf_spectrum(gy, p);
  const TowerSpectrum sm = serf_spectrum(gm, p);

  const double horizon = 64.0 * 8.0 * 8.0;
  const double dt = 0.5;
  std::vector<double> ts;
  for (double t = 0.0; t <= horizon; t += dt) ts.push_back(t);
  const ComplexSeries d = difference_signal(sy, sm, ts);
  double acc = 0.0;
  for (const auto& v : d.values) acc += std::norm(v);
  const double avg = acc / double(d.values.size());

  const double par = parseval(sy, sm);
  CHECK(avg / par == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("series csv carries t, re, im, abs") {
  ComplexSeries s;
  s.times = {0.0, 1.5};
  s.values = {{1.0, 0.0}, {0.0, -0.5}};
  std::ostringstream os;
  write_series_csv(s, os);
  CHECK(os.str() == "t,re,im,abs\n0,1,0,1\n1.5,0,-0.5,0.5\n");
}
