#pragma once

#include <string>
#include <vector>

namespace spire {

enum class Family { Prism, Moebius, Custom };

// Dense symmetric 0/1 adjacency of a connected d-regular graph.
//
// The ladder families live in pair coordinates (k, b) with k the rail
// position and b the side; vertex index is 2k + b. Both families share the
// rungs and the open rails and differ only in the two closing edges:
// parallel for the prism, twisted for the Moebius ladder.
struct BaseGraph {
  int n = 0;
  int d = 0;
  int m = 0;  // rail length; 0 for Custom
  Family family = Family::Custom;
  int distinguished = 0;  // starting vertex u
  std::vector<double> adjacency;  // n*n row-major

  double at(int v, int w) const {
    return adjacency[static_cast<std::size_t>(v) * n + w];
  }
};

// One base eigenvalue mu with its multiplicity and the probability mass
// p = sum over the degenerate eigenvectors of |<u|alpha>|^2 at the
// distinguished vertex (= multiplicity/n for vertex-transitive graphs).
struct SpectralChannel {
  double mu = 0.0;
  int multiplicity = 0;
  double p = 0.0;
};

inline int pair_index(int k, int b) { return 2 * k + b; }

// Prism Y_m: cycle-times-edge ladder, parallel closing edges. m >= 3.
BaseGraph prism(int m);

// Moebius ladder M_m: same ladder with twisted closing edges. m >= 3.
BaseGraph moebius(int m);

// Single edge (n=2, d=1): the smallest base graph; its spired lift is the
// classic pair of welded binary trees.
BaseGraph k2();

// Spectral channels of the base graph, ascending in mu, grouped with
// absolute tolerance 1e-9 (exactly degenerate closed-form pairs merge; the
// snap radius is far above eigensolver residual and far below the minimum
// family gaps at the sizes handled here). Families use the closed forms
// 2cos(2 pi j / m) + 1 (both families, identical expression) and
// 2cos(2 pi j / m) - 1 / 2cos((2j+1) pi / m) - 1; Custom graphs use the
// dense eigensolver and per-group eigenvector mass at the distinguished
// vertex.
std::vector<SpectralChannel> base_channels(const BaseGraph& g);

struct Bipartition {
  bool bipartite = false;
  std::vector<int> colour;  // proper 2-colouring when bipartite
};

// BFS 2-colouring test.
Bipartition is_bipartite(const BaseGraph& g);

// The rail position equidistant from both closing edges: index of
// ((m-1)/2, 0). Defined for odd m only; even ladders have no such vertex.
int symmetric_placement(int m);

// Loads a custom graph from an edge-list text file: first line "n d u",
// then one "v w" pair per line (0-indexed). Rejects inputs that are not
// simple, d-regular and connected.
BaseGraph load_edge_list(const std::string& path);

}  // namespace spire
