#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "spire/tower.hpp"

namespace spire {

// Time grid plus complex values of a return amplitude f(t) = sum_k W_k
// e^{-i lambda_k t} or of a difference signal.
struct ComplexSeries {
  std::vector<double> times;
  std::vector<std::complex<double>> values;
};

// Chunk sizes for the direct spectral sum. Defaults are far above desk
// scale; they exist so the summation contract (fixed per-point accumulation
// order of eigenvalue blocks) is exercised rather than assumed. Results are
// independent of the block sizes to ~1e-13 and independent of the thread
// count bit for bit (each time point is computed in isolation).
struct SumBlocks {
  std::size_t eig_block = 30'000'000;
  std::size_t time_block = 4'000'000;
};

// values[j] = sum_k W_k exp(-i lambda_k t_j), summed in entry order
// (channel-major). Direct chunked summation is the semantic contract; any
// fast-transform acceleration must sit behind this signature and match it to
// 1e-9 absolute.
ComplexSeries return_amplitude(const TowerSpectrum& spec,
                               const std::vector<double>& times,
                               const SumBlocks& blocks = {});

// Pointwise f_A - f_B on a shared grid. Both spectra must agree on
// (L, c, gamma).
ComplexSeries difference_signal(const TowerSpectrum& a, const TowerSpectrum& b,
                                const std::vector<double>& times,
                                const SumBlocks& blocks = {});

// Pointwise subtraction of two precomputed series; grids must be identical.
ComplexSeries difference_series(const ComplexSeries& a, const ComplexSeries& b);

// Time-averaged squared difference signal via the eigenvalue domain:
// Par = sum_lambda |c_lambda|^2 where c_lambda is the weight difference at
// matched eigenvalues (aggregated per spectrum with the snap tolerance, then
// aligned across spectra with the same tolerance; unmatched eigenvalues
// contribute their full weight).
double parseval(const TowerSpectrum& a, const TowerSpectrum& b,
                double snap_tol = 1e-9);

// (lambda, weight) list aggregated by eigenvalue: sorted ascending, values
// within `tol` of a group's first member merge into it with summed weight.
std::vector<std::pair<double, double>> aggregate_by_lambda(
    const TowerSpectrum& spec, double tol = 1e-9);

// CSV with columns t,re,im,abs.
void write_series_csv(const ComplexSeries& s, std::ostream& os);

}  // namespace spire
