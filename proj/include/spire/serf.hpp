#pragma once

#include <iosfwd>
#include <vector>

#include "spire/tower.hpp"

namespace spire {

// Roots of one channel's secular equation
//     gamma * sin((L+2) theta) = mu * sin((L+1) theta),
// the theta-space form of gamma*U_{L+1}(x) = mu*U_L(x) with x = lambda/(2
// gamma) = cos theta. In-band roots interlace the knots k*pi/(L+1); at most
// one eigenvalue per sign of mu escapes the band |lambda| <= 2 gamma onto the
// hyperbolic branch.
struct ChannelRoots {
  SpectralChannel channel;
  std::vector<double> thetas;        // ascending, strictly inside (0, pi)
  std::vector<double> out_of_band;   // lambda values with |lambda| > 2 gamma
  bool undercount = false;           // fewer than L in-band roots recovered
};

// gamma*sin((L+2)theta) - mu*sin((L+1)theta).
double secular_g(double theta, double mu, const TowerParams& p);

// Bisects each interlacing bracket [k pi/(L+1), (k+1) pi/(L+1)], k = 0..L,
// for exactly 53 steps (full double precision on a bracket of width
// pi/(L+1); deterministic cost).
//
// Bracket endpoint signs are analytic rather than evaluated:
// G(k pi/(L+1)) = gamma*(-1)^k * sin(k pi/(L+1)), so the sign at an interior
// knot is (-1)^k, and the directional limits into 0 and pi are
// sign(gamma*(L+2) - mu*(L+1)) and (-1)^{L+1} * sign(gamma*(L+2) + mu*(L+1)).
// Every interior bracket therefore holds exactly one root, and only the
// first/last brackets are conditional -- they encode band escape. Numerical
// endpoint evaluation is unusable here: the true |G| a distance 1e-15 inside
// a knot is ~1e-15 while sin argument reduction noise at (L+1)*theta ~ pi is
// ~1.5e-14, so a borderline channel can lose a root to sign noise.
ChannelRoots in_band_roots(double mu, const TowerParams& p);

// Hyperbolic-branch roots lambda = sign(mu)*2*gamma*cosh(kappa) with
//     gamma*sinh((L+2)kappa) = |mu|*sinh((L+1)kappa),
// solved in the overflow-safe rescaled form
//     gamma*(1 - e^{-2(L+2)kappa}) - |mu|*e^{-kappa}*(1 - e^{-2(L+1)kappa})
// (same sign; raw sinh overflows once (L+2)*kappa exceeds ~709). Bisection
// runs 53 steps on kappa in (1e-15, acosh(max(|mu|/(2 gamma), 1)) + 5).
// Returns an empty list when no sign change exists (no escape).
std::vector<double> out_of_band_roots(double mu, const TowerParams& p);

// sum_{l=0}^{L} U_l(cos theta)^2 via the closed form
// ((2L+3) sin theta - sin((2L+3) theta)) / (4 sin^3 theta).
double norm_sum(double theta, int L);

// Same sum at x = cosh kappa > 1 via the forward recurrence
// u_{l+1} = 2x u_l - u_{l-1} (no closed form needed off the band).
double norm_sum_hyperbolic(double x, int L);

// Full secular-solver spectrum: per channel, in-band roots with weights
// W = p / norm_sum(theta) (plus optional hyperbolic roots with
// W = p / norm_sum_hyperbolic). Entries are channel-major, theta ascending,
// out-of-band roots appended after their channel's in-band roots. Degenerate
// channels are solved once and carry their aggregated mass p. The hyperbolic
// branch is off by default: its weights are exponentially small in L and the
// production pipeline excludes them; tests enable it to reconcile against
// direct diagonalization.
// Throws numeric_error if any root residual exceeds
// 1e-10 * (gamma + |mu|) * (L+2) (the slope of G scales with L).
TowerSpectrum serf_spectrum(const BaseGraph& g, const TowerParams& p,
                            bool include_out_of_band = false);

// Same, from precomputed channels (lets tests drive raw channel lists).
TowerSpectrum serf_spectrum_channels(const std::vector<SpectralChannel>& channels,
                                     const TowerParams& p,
                                     bool include_out_of_band = false);

// CSV with columns lambda,weight,channel_mu. Secular-solver entries hold a
// channel's aggregated weight, so each expands to `multiplicity` rows of
// weight/multiplicity -- row counts then equal eigenvalue multiplicities,
// matching direct output granularity. Direct entries emit one row each with
// an empty channel_mu field.
void write_spectrum_csv(const TowerSpectrum& spec,
                        const std::vector<SpectralChannel>& channels,
                        std::ostream& os);

}  // namespace spire
