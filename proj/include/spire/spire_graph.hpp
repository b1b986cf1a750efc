#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "spire/graphs.hpp"
#include "spire/signal.hpp"

namespace spire {

// The exponential-size lift of a base graph: every base vertex becomes a
// cluster of D^L foundation vertices crowned by an inverted D-ary tree (the
// spire) whose root is the apex; every base edge becomes a random c-regular
// bipartite graph between the two foundations (c = 1: perfect matching,
// c = 2: single alternating Hamiltonian cycle).
//
// Canonical vertex index: mixed radix. Cluster v occupies the block
// [v*T, (v+1)*T) with T = (D^{L+1}-1)/(D-1); inside a cluster, level l
// starts at offset (D^l - 1)/(D-1) and the level-l strings are the integers
// 0..D^l-1, most significant character first. Parent/child are then O(1)
// arithmetic: the parent of string s at level l is s / D at level l - 1.
struct SpiredGraph {
  BaseGraph base;
  int L = 0;
  int c = 2;
  int D = 0;
  std::int64_t cluster_size = 0;  // T
  std::int64_t n_vertices = 0;    // n * T
  std::uint64_t seed = 0;
  std::vector<std::vector<std::int32_t>> adjacency;  // by canonical index
  std::vector<std::int32_t> apex_indices;            // apex of each cluster

  std::int64_t index_of(int v, int level, std::int64_t s) const;
  int level_of(std::int64_t index) const;
};

constexpr std::int64_t kSpiredCap = 200'000;

// Deterministic given the seed: inter-cluster randomness is drawn from one
// splitmix64 stream while scanning base edges in lexicographic order.
SpiredGraph build_spired(const BaseGraph& g, int L, int c, std::uint64_t seed,
                         std::int64_t cap = kSpiredCap);

// A spired graph hidden behind uniformly random injective a-bit labels,
// a = 2*ceil(log2 |V|). Callers hold only the seed label (the distinguished
// apex) and the neighbor oracle; the query counter tallies every call,
// including misses.
struct OracleInstance {
  SpiredGraph graph;
  int label_bits = 0;
  std::vector<std::uint64_t> labels;  // by canonical vertex index
  std::unordered_map<std::uint64_t, std::int32_t> inverse;
  std::uint64_t seed_label = 0;
  std::uint64_t rng_seed = 0;
  mutable std::atomic<std::uint64_t> query_count{0};

  OracleInstance() = default;
  OracleInstance(const OracleInstance&) = delete;
  OracleInstance& operator=(const OracleInstance&) = delete;
};

// Labels are rejection-sampled from the a-bit space (injectivity enforced;
// the space has >= |V|^2 points so collisions are rare). A hard cap of
// 64*|V| draws turns a broken generator into an error instead of a hang.
std::unique_ptr<OracleInstance> obfuscate(SpiredGraph sg, std::uint64_t seed);

// Neighbor labels (sorted ascending) for a valid label, std::nullopt for any
// label outside the image. Thread-safe for concurrent readers; every call
// increments the query counter exactly once.
std::optional<std::vector<std::uint64_t>> oracle_query(
    const OracleInstance& inst, std::uint64_t label);

// Flat dump for external experiments: one JSON header line with the
// parameters, then one line per vertex, "label: neighbor...", all labels as
// fixed-width hex, rows and neighbor sets sorted by label.
void write_oracle_dump(const OracleInstance& inst, std::ostream& os);

// <apex_u| exp(-i (A_spire / c) t) |apex_u> on the given grid, by dense
// diagonalization of the full lifted graph (validation only; respects the
// dense cap). The level-state dynamics seen from an apex is independent of
// the inter-cluster randomness and equals the towered-graph amplitude.
ComplexSeries spire_return_amplitude(const SpiredGraph& sg,
                                     const std::vector<double>& times,
                                     int dense_cap = 20'000);

}  // namespace spire
