#include "spire/serf.hpp"

#include <cmath>
#include <ostream>

#include "spire/util.hpp"

namespace spire {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr int kBisectionSteps = 53;
constexpr double kEndpointOffset = 1e-15;

}  // namespace

double secular_g(double theta, double mu, const TowerParams& p) {
  return p.gamma * std::sin((p.L + 2) * theta) -
         mu * std::sin((p.L + 1) * theta);
}

ChannelRoots in_band_roots(double mu, const TowerParams& p) {
  const int L = p.L;
  const double gamma = p.gamma;
  ChannelRoots roots;
  roots.channel = {mu, 1, 0.0};
  roots.thetas.reserve(L + 1);

  // Directional limits of sign(G) into theta = 0 and theta = pi.
  const int s_zero = (gamma * (L + 2) - mu * (L + 1) > 0.0) ? 1 : -1;
  const int s_pi = ((gamma * (L + 2) + mu * (L + 1) > 0.0) ? 1 : -1) *
                   (((L + 1) % 2 == 0) ? 1 : -1);

  for (int k = 0; k <= L; ++k) {
    const int sa = (k == 0) ? s_zero : ((k % 2 == 0) ? 1 : -1);
    const int sb = (k == L) ? s_pi : (((k + 1) % 2 == 0) ? 1 : -1);
    if (sa == sb) continue;  // this bracket's eigenvalue escaped the band

    double lo = k * kPi / (L + 1) + kEndpointOffset;
    double hi = (k + 1) * kPi / (L + 1) - kEndpointOffset;
    const bool neg_lo = sa < 0;
    for (int step = 0; step < kBisectionSteps; ++step) {
      const double mid = 0.5 * (lo + hi);
      const double gm = secular_g(mid, mu, p);
      if ((gm < 0.0) == neg_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    roots.thetas.push_back(0.5 * (lo + hi));
  }
  roots.undercount = static_cast<int>(roots.thetas.size()) < L;
  return roots;
}

std::vector<double> out_of_band_roots(double mu, const TowerParams& p) {
  const int L = p.L;
  const double gamma = p.gamma;
  const double amu = std::fabs(mu);

  const auto h = [&](double kappa) {
    return gamma * (1.0 - std::exp(-2.0 * (L + 2) * kappa)) -
           amu * std::exp(-kappa) * (1.0 - std::exp(-2.0 * (L + 1) * kappa));
  };

  double lo = kEndpointOffset;
  double hi = std::acosh(std::max(amu / (2.0 * gamma), 1.0)) + 5.0;
  const double hlo = h(lo);
  const double hhi = h(hi);
  if ((hlo < 0.0) == (hhi < 0.0)) return {};  // no escape for this channel

  const bool neg_lo = hlo < 0.0;
  for (int step = 0; step < kBisectionSteps; ++step) {
    const double mid = 0.5 * (lo + hi);
    if ((h(mid) < 0.0) == neg_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double kappa = 0.5 * (lo + hi);
  return {std::copysign(2.0 * gamma * std::cosh(kappa), mu)};
}

double norm_sum(double theta, int L) {
  const double s = std::sin(theta);
  return ((2 * L + 3) * s - std::sin((2 * L + 3) * theta)) / (4.0 * s * s * s);
}

double norm_sum_hyperbolic(double x, int L) {
  double u_prev = 1.0;       // U_0
  double u_cur = 2.0 * x;    // U_1
  double sum = u_prev * u_prev;
  if (L >= 1) sum += u_cur * u_cur;
  for (int l = 2; l <= L; ++l) {
    const double u_next = 2.0 * x * u_cur - u_prev;
    u_prev = u_cur;
    u_cur = u_next;
    sum += u_cur * u_cur;
  }
  return sum;
}

TowerSpectrum serf_spectrum_channels(
    const std::vector<SpectralChannel>& channels, const TowerParams& p,
    bool include_out_of_band) {
  TowerSpectrum spec;
  spec.params = p;
  spec.source = SpectrumSource::Serf;

  for (std::size_t ci = 0; ci < channels.size(); ++ci) {
    const SpectralChannel& ch = channels[ci];
    const ChannelRoots roots = in_band_roots(ch.mu, p);
    const double residual_tol =
        1e-10 * (p.gamma + std::fabs(ch.mu)) * (p.L + 2);
    for (const double theta : roots.thetas) {
      const double g = secular_g(theta, ch.mu, p);
      if (!(std::fabs(g) <= residual_tol)) {
        throw numeric_error("secular root residual " + fmt9(std::fabs(g)) +
                            " exceeds " + fmt9(residual_tol) +
                            " at mu = " + fmt9(ch.mu));
      }
      const double lambda = 2.0 * p.gamma * std::cos(theta);
      spec.entries.push_back(
          {lambda, ch.p / norm_sum(theta, p.L), static_cast<int>(ci)});
    }
    if (include_out_of_band && std::fabs(ch.mu) > p.gamma) {
      for (const double lambda : out_of_band_roots(ch.mu, p)) {
        const double x = std::fabs(lambda) / (2.0 * p.gamma);
        spec.entries.push_back(
            {lambda, ch.p / norm_sum_hyperbolic(x, p.L),
             static_cast<int>(ci)});
      }
    }
  }
  return spec;
}

TowerSpectrum serf_spectrum(const BaseGraph& g, const TowerParams& p,
                            bool include_out_of_band) {
  return serf_spectrum_channels(base_channels(g), p, include_out_of_band);
}

void write_spectrum_csv(const TowerSpectrum& spec,
                        const std::vector<SpectralChannel>& channels,
                        std::ostream& os) {
  os << "lambda,weight,channel_mu\n";
  for (const auto& e : spec.entries) {
    if (spec.source == SpectrumSource::Serf) {
      const SpectralChannel& ch = channels.at(static_cast<std::size_t>(e.channel));
      const double w = e.weight / ch.multiplicity;
      for (int rep = 0; rep < ch.multiplicity; ++rep) {
        os << fmt9(e.lambda) << ',' << fmt9(w) << ',' << fmt9(ch.mu) << '\n';
      }
    } else {
      os << fmt9(e.lambda) << ',' << fmt9(e.weight) << ",\n";
    }
  }
}

}  // namespace spire
