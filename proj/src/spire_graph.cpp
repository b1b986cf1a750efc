#include "spire/spire_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>

#include "spire/linalg.hpp"
#include "spire/util.hpp"

namespace spire {

std::int64_t SpiredGraph::index_of(int v, int level, std::int64_t s) const {
  std::int64_t level_offset = 0;  // (D^level - 1)/(D - 1) by accumulation
  std::int64_t width = 1;
  for (int l = 0; l < level; ++l) {
    level_offset += width;
    width *= D;
  }
  return std::int64_t(v) * cluster_size + level_offset + s;
}

int SpiredGraph::level_of(std::int64_t index) const {
  std::int64_t in_cluster = index % cluster_size;
  std::int64_t width = 1;
  for (int l = 0; l <= L; ++l) {
    if (in_cluster < width) return l;
    in_cluster -= width;
    width *= D;
  }
  throw usage_error("canonical index out of range");
}

SpiredGraph build_spired(const BaseGraph& g, int L, int c, std::uint64_t seed,
                         std::int64_t cap) {
  if (c != 1 && c != 2) throw usage_error("thickening c must be 1 or 2");
  if (L < 1) throw usage_error("spire height L must be at least 1");

  SpiredGraph sg;
  sg.base = g;
  sg.L = L;
  sg.c = c;
  sg.D = c * g.d;
  sg.seed = seed;
  if (sg.D < 2) {
    throw usage_error("spires need branching D = c*d >= 2");
  }

  std::int64_t T = 0, width = 1;
  for (int l = 0; l <= L; ++l) {
    T += width;
    width *= sg.D;
    if (T > cap || std::int64_t(g.n) * T > cap) {
      throw numeric_error("spired graph size reaches " +
                          std::to_string(g.n * T) + " vertices by level " +
                          std::to_string(l) + ", beyond the cap " +
                          std::to_string(cap));
    }
  }
  sg.cluster_size = T;
  sg.n_vertices = std::int64_t(g.n) * T;

  sg.adjacency.assign(static_cast<std::size_t>(sg.n_vertices), {});
  const auto add_edge = [&](std::int64_t a, std::int64_t b) {
    sg.adjacency[static_cast<std::size_t>(a)].push_back(
        static_cast<std::int32_t>(b));
    sg.adjacency[static_cast<std::size_t>(b)].push_back(
        static_cast<std::int32_t>(a));
  };

  // Spire edges: each level-l string s hangs off its prefix s/D one level up.
  for (int v = 0; v < g.n; ++v) {
    std::int64_t strings = 1;
    for (int l = 1; l <= L; ++l) {
      strings *= sg.D;
      for (std::int64_t s = 0; s < strings; ++s) {
        add_edge(sg.index_of(v, l, s), sg.index_of(v, l - 1, s / sg.D));
      }
    }
  }

  // Inter-cluster graphs, one per base edge, scanned in lexicographic edge
  // order from a single stream so the construction is reproducible.
  Rng rng(seed);
  std::int64_t foundation = 1;
  for (int l = 0; l < L; ++l) foundation *= sg.D;  // D^L per cluster
  std::vector<std::int32_t> pi(static_cast<std::size_t>(foundation));
  std::vector<std::int32_t> sigma(static_cast<std::size_t>(foundation));
  for (int v = 0; v < g.n; ++v) {
    for (int w = v + 1; w < g.n; ++w) {
      if (g.at(v, w) == 0.0) continue;
      if (c == 1) {
        // Uniform random perfect matching between the two foundations.
        std::iota(sigma.begin(), sigma.end(), 0);
        rng.shuffle(sigma);
        for (std::int64_t i = 0; i < foundation; ++i) {
          add_edge(sg.index_of(v, L, i), sg.index_of(w, L, sigma[i]));
        }
      } else {
        // Uniform random alternating Hamiltonian cycle: visit
        // pi(0), sigma(0), pi(1), sigma(1), ... and close back to pi(0).
        std::iota(pi.begin(), pi.end(), 0);
        rng.shuffle(pi);
        std::iota(sigma.begin(), sigma.end(), 0);
        rng.shuffle(sigma);
        for (std::int64_t i = 0; i < foundation; ++i) {
          add_edge(sg.index_of(v, L, pi[i]), sg.index_of(w, L, sigma[i]));
          add_edge(sg.index_of(w, L, sigma[i]),
                   sg.index_of(v, L, pi[(i + 1) % foundation]));
        }
      }
    }
  }

  sg.apex_indices.reserve(g.n);
  for (int v = 0; v < g.n; ++v) {
    sg.apex_indices.push_back(
        static_cast<std::int32_t>(sg.index_of(v, 0, 0)));
  }
  return sg;
}

std::unique_ptr<OracleInstance> obfuscate(SpiredGraph sg, std::uint64_t seed) {
  auto inst = std::make_unique<OracleInstance>();
  const std::int64_t nv = sg.n_vertices;
  int bits = 1;
  while ((std::int64_t(1) << bits) < nv) ++bits;
  inst->label_bits = 2 * bits;
  inst->rng_seed = seed;

  const std::uint64_t mask = (inst->label_bits >= 64)
                                 ? ~std::uint64_t(0)
                                 : ((std::uint64_t(1) << inst->label_bits) - 1);
  Rng rng(seed);
  inst->labels.resize(static_cast<std::size_t>(nv));
  inst->inverse.reserve(static_cast<std::size_t>(nv) * 2);
  const std::uint64_t draw_cap = 64ull * static_cast<std::uint64_t>(nv);
  std::uint64_t draws = 0;
  for (std::int64_t v = 0; v < nv; ++v) {
    for (;;) {
      if (++draws > draw_cap) {
        throw numeric_error("label sampling exceeded the rejection cap");
      }
      const std::uint64_t candidate = rng.next() & mask;
      if (inst->inverse.emplace(candidate, static_cast<std::int32_t>(v))
              .second) {
        inst->labels[static_cast<std::size_t>(v)] = candidate;
        break;
      }
    }
  }
  inst->seed_label =
      inst->labels[static_cast<std::size_t>(
          sg.apex_indices[static_cast<std::size_t>(sg.base.distinguished)])];
  inst->graph = std::move(sg);
  return inst;
}

std::optional<std::vector<std::uint64_t>> oracle_query(
    const OracleInstance& inst, std::uint64_t label) {
  inst.query_count.fetch_add(1, std::memory_order_relaxed);
  const auto it = inst.inverse.find(label);
  if (it == inst.inverse.end()) return std::nullopt;
  const auto& nbrs =
      inst.graph.adjacency[static_cast<std::size_t>(it->second)];
  std::vector<std::uint64_t> out;
  out.reserve(nbrs.size());
  for (const std::int32_t w : nbrs) {
    out.push_back(inst.labels[static_cast<std::size_t>(w)]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void write_oracle_dump(const OracleInstance& inst, std::ostream& os) {
  const SpiredGraph& sg = inst.graph;
  const char* family = "custom";
  if (sg.base.family == Family::Prism) family = "prism";
  if (sg.base.family == Family::Moebius) family = "moebius";
  os << "{\"seed\": " << sg.seed << ", \"seed_labels\": " << inst.rng_seed
     << ", \"family\": \"" << family
     << "\", \"m\": " << sg.base.m << ", \"n\": " << sg.base.n
     << ", \"d\": " << sg.base.d << ", \"L\": " << sg.L << ", \"c\": " << sg.c
     << ", \"label_bits\": " << inst.label_bits
     << ", \"vertices\": " << sg.n_vertices << "}\n";

  const int hex_width = (inst.label_bits + 3) / 4;
  char buf[32];
  const auto hex = [&](std::uint64_t label) {
    std::snprintf(buf, sizeof buf, "%0*llx", hex_width,
                  static_cast<unsigned long long>(label));
    return std::string(buf);
  };

  // Reads adjacency directly: dumping is not oracle access and must leave
  // the query counter untouched.
  std::vector<std::uint64_t> order = inst.labels;
  std::sort(order.begin(), order.end());
  std::vector<std::uint64_t> nbrs;
  for (const std::uint64_t label : order) {
    os << hex(label) << ':';
    const std::int32_t v = inst.inverse.at(label);
    nbrs.clear();
    for (const std::int32_t w : sg.adjacency[static_cast<std::size_t>(v)]) {
      nbrs.push_back(inst.labels[static_cast<std::size_t>(w)]);
    }
    std::sort(nbrs.begin(), nbrs.end());
    for (const std::uint64_t nb : nbrs) os << ' ' << hex(nb);
    os << '\n';
  }
}

ComplexSeries spire_return_amplitude(const SpiredGraph& sg,
                                     const std::vector<double>& times,
                                     int dense_cap) {
  if (sg.n_vertices > dense_cap) {
    throw numeric_error("spired graph dimension " +
                        std::to_string(sg.n_vertices) +
                        " exceeds the dense diagonalization cap");
  }
  const int N = static_cast<int>(sg.n_vertices);
  std::vector<double> h(std::size_t(N) * N, 0.0);
  const double scale = 1.0 / sg.c;
  for (int a = 0; a < N; ++a) {
    for (const std::int32_t b : sg.adjacency[static_cast<std::size_t>(a)]) {
      h[std::size_t(a) * N + b] = scale;
    }
  }
  const EighResult eig = eigh_dense(h, N);
  const int apex =
      sg.apex_indices[static_cast<std::size_t>(sg.base.distinguished)];

  ComplexSeries out;
  out.times = times;
  out.values.resize(times.size());
  std::vector<double> weights(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    const double comp = eig.vec(apex, k);
    weights[static_cast<std::size_t>(k)] = comp * comp;
  }
  for (std::size_t j = 0; j < times.size(); ++j) {
    double re = 0.0, im = 0.0;
    for (int k = 0; k < N; ++k) {
      const double phase = eig.values[k] * times[j];
      re += weights[k] * std::cos(phase);
      im -= weights[k] * std::sin(phase);
    }
    out.values[j] = {re, im};
  }
  return out;
}

}  // namespace spire
