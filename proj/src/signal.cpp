#include "spire/signal.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "spire/util.hpp"

namespace spire {

ComplexSeries return_amplitude(const TowerSpectrum& spec,
                               const std::vector<double>& times,
                               const SumBlocks& blocks) {
  if (spec.entries.empty()) {
    throw usage_error("return amplitude of an empty spectrum");
  }
  const std::size_t eig_block = std::max<std::size_t>(1, blocks.eig_block);
  const std::size_t time_block = std::max<std::size_t>(1, blocks.time_block);

  ComplexSeries out;
  out.times = times;
  out.values.assign(times.size(), {});

  const std::vector<SpectrumEntry>& entries = spec.entries;
  for (std::size_t t0 = 0; t0 < times.size(); t0 += time_block) {
    const std::size_t t1 = std::min(times.size(), t0 + time_block);
    parallel_for(t1 - t0, [&, t0](std::size_t begin, std::size_t end) {
      for (std::size_t j = t0 + begin; j < t0 + end; ++j) {
        const double t = times[j];
        std::complex<double> acc{0.0, 0.0};
        // Eigenvalue blocks accumulate into `acc` in block index order, so
        // the result does not depend on how points are assigned to workers.
        for (std::size_t e0 = 0; e0 < entries.size(); e0 += eig_block) {
          const std::size_t e1 = std::min(entries.size(), e0 + eig_block);
          double re = 0.0, im = 0.0;
          for (std::size_t k = e0; k < e1; ++k) {
            const double phase = entries[k].lambda * t;
            re += entries[k].weight * std::cos(phase);
            im -= entries[k].weight * std::sin(phase);
          }
          acc += std::complex<double>(re, im);
        }
        out.values[j] = acc;
      }
    });
  }
  return out;
}

namespace {

void check_compatible(const TowerParams& a, const TowerParams& b) {
  if (a.L != b.L || a.c != b.c || a.gamma != b.gamma) {
    throw usage_error(
        "spectra have mismatched tower parameters (L, c, gamma)");
  }
}

}  // namespace

ComplexSeries difference_signal(const TowerSpectrum& a, const TowerSpectrum& b,
                                const std::vector<double>& times,
                                const SumBlocks& blocks) {
  check_compatible(a.params, b.params);
  return difference_series(return_amplitude(a, times, blocks),
                           return_amplitude(b, times, blocks));
}

ComplexSeries difference_series(const ComplexSeries& a,
                                const ComplexSeries& b) {
  if (a.times != b.times) {
    throw usage_error("difference of series on mismatched time grids");
  }
  ComplexSeries out;
  out.times = a.times;
  out.values.resize(a.values.size());
  for (std::size_t j = 0; j < a.values.size(); ++j) {
    out.values[j] = a.values[j] - b.values[j];
  }
  return out;
}

std::vector<std::pair<double, double>> aggregate_by_lambda(
    const TowerSpectrum& spec, double tol) {
  std::vector<std::pair<double, double>> items;
  items.reserve(spec.entries.size());
  for (const auto& e : spec.entries) items.emplace_back(e.lambda, e.weight);
  std::sort(items.begin(), items.end());
  std::vector<std::pair<double, double>> out;
  for (const auto& [lambda, w] : items) {
    if (!out.empty() && std::fabs(lambda - out.back().first) <= tol) {
      out.back().second += w;  // keep the group's first lambda
    } else {
      out.emplace_back(lambda, w);
    }
  }
  return out;
}

double parseval(const TowerSpectrum& a, const TowerSpectrum& b,
                double snap_tol) {
  check_compatible(a.params, b.params);
  const auto A = aggregate_by_lambda(a, snap_tol);
  const auto B = aggregate_by_lambda(b, snap_tol);
  double par = 0.0;
  std::size_t i = 0, j = 0;
  while (i < A.size() || j < B.size()) {
    if (j >= B.size() ||
        (i < A.size() && A[i].first < B[j].first - snap_tol)) {
      par += A[i].second * A[i].second;
      ++i;
    } else if (i >= A.size() || B[j].first < A[i].first - snap_tol) {
      par += B[j].second * B[j].second;
      ++j;
    } else {
      const double c = A[i].second - B[j].second;
      par += c * c;
      ++i;
      ++j;
    }
  }
  return par;
}

void write_series_csv(const ComplexSeries& s, std::ostream& os) {
  os << "t,re,im,abs\n";
  for (std::size_t j = 0; j < s.times.size(); ++j) {
    os << fmt9(s.times[j]) << ',' << fmt9(s.values[j].real()) << ','
       << fmt9(s.values[j].imag()) << ',' << fmt9(std::abs(s.values[j]))
       << '\n';
  }
}

}  // namespace spire
