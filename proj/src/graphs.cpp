#include "spire/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "spire/linalg.hpp"
#include "spire/util.hpp"

namespace spire {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kGroupTol = 1e-9;

void add_edge(BaseGraph& g, int v, int w) {
  g.adjacency[std::size_t(v) * g.n + w] = 1.0;
  g.adjacency[std::size_t(w) * g.n + v] = 1.0;
}

BaseGraph ladder(int m, bool twisted) {
  if (m < 3) throw usage_error("ladder families require m >= 3");
  BaseGraph g;
  g.n = 2 * m;
  g.d = 3;
  g.m = m;
  g.family = twisted ? Family::Moebius : Family::Prism;
  // Odd ladders admit the placement equidistant from the closing edges;
  // even ladders do not, and any vertex is equivalent by transitivity.
  g.distinguished = (m % 2 == 1) ? symmetric_placement(m) : pair_index(m / 2, 0);
  g.adjacency.assign(std::size_t(g.n) * g.n, 0.0);
  for (int k = 0; k < m; ++k) add_edge(g, pair_index(k, 0), pair_index(k, 1));
  for (int k = 0; k + 1 < m; ++k) {
    for (int b = 0; b < 2; ++b) {
      add_edge(g, pair_index(k, b), pair_index(k + 1, b));
    }
  }
  if (twisted) {
    add_edge(g, pair_index(m - 1, 0), pair_index(0, 1));
    add_edge(g, pair_index(m - 1, 1), pair_index(0, 0));
  } else {
    add_edge(g, pair_index(m - 1, 0), pair_index(0, 0));
    add_edge(g, pair_index(m - 1, 1), pair_index(0, 1));
  }
  return g;
}

// Merges a sorted value list into (value, multiplicity) groups; the first
// member of each group is kept as the representative, so exactly degenerate
// closed-form values stay bitwise intact.
std::vector<std::pair<double, int>> group_values(std::vector<double> vals) {
  std::sort(vals.begin(), vals.end());
  std::vector<std::pair<double, int>> out;
  for (double v : vals) {
    if (!out.empty() && std::fabs(v - out.back().first) <= kGroupTol) {
      ++out.back().second;
    } else {
      out.emplace_back(v, 1);
    }
  }
  return out;
}

void check_symmetric(const BaseGraph& g) {
  for (int v = 0; v < g.n; ++v) {
    if (g.at(v, v) != 0.0) throw usage_error("adjacency has a self-loop");
    for (int w = v + 1; w < g.n; ++w) {
      if (g.at(v, w) != g.at(w, v)) {
        throw usage_error("adjacency is not symmetric");
      }
    }
  }
}

}  // namespace

BaseGraph prism(int m) { return ladder(m, false); }

BaseGraph moebius(int m) { return ladder(m, true); }

BaseGraph k2() {
  BaseGraph g;
  g.n = 2;
  g.d = 1;
  g.m = 0;
  g.family = Family::Custom;
  g.distinguished = 0;
  g.adjacency = {0.0, 1.0, 1.0, 0.0};
  return g;
}

std::vector<SpectralChannel> base_channels(const BaseGraph& g) {
  check_symmetric(g);
  std::vector<SpectralChannel> channels;
  if (g.family == Family::Prism || g.family == Family::Moebius) {
    const int m = g.m;
    std::vector<double> vals;
    vals.reserve(2 * m);
    for (int j = 0; j < m; ++j) {
      // The +1 branch is written identically for both families so the shared
      // eigenvalues coincide bit for bit.
      vals.push_back(2.0 * std::cos(2.0 * kPi * j / m) + 1.0);
      if (g.family == Family::Prism) {
        vals.push_back(2.0 * std::cos(2.0 * kPi * j / m) - 1.0);
      } else {
        vals.push_back(2.0 * std::cos((2.0 * j + 1.0) * kPi / m) - 1.0);
      }
    }
    for (const auto& [mu, mult] : group_values(std::move(vals))) {
      channels.push_back({mu, mult, double(mult) / g.n});
    }
    return channels;
  }

  const EighResult eig = eigh_dense(g.adjacency, g.n);
  // Group the sorted eigenvalues, accumulating the distinguished vertex's
  // eigenvector mass per group.
  const int u = g.distinguished;
  int i = 0;
  while (i < g.n) {
    int j = i;
    double p = 0.0;
    while (j < g.n && std::fabs(eig.values[j] - eig.values[i]) <= kGroupTol) {
      const double comp = eig.vec(u, j);
      p += comp * comp;
      ++j;
    }
    channels.push_back({eig.values[i], j - i, p});
    i = j;
  }
  return channels;
}

Bipartition is_bipartite(const BaseGraph& g) {
  Bipartition result;
  result.colour.assign(g.n, -1);
  for (int start = 0; start < g.n; ++start) {
    if (result.colour[start] != -1) continue;
    result.colour[start] = 0;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w = 0; w < g.n; ++w) {
        if (g.at(v, w) == 0.0) continue;
        if (result.colour[w] == -1) {
          result.colour[w] = 1 - result.colour[v];
          queue.push_back(w);
        } else if (result.colour[w] == result.colour[v]) {
          result.bipartite = false;
          result.colour.clear();
          return result;
        }
      }
    }
  }
  result.bipartite = true;
  return result;
}

int symmetric_placement(int m) {
  if (m < 3) throw usage_error("symmetric placement requires m >= 3");
  if (m % 2 == 0) {
    throw usage_error(
        "no vertex of an even ladder is equidistant from both closing edges");
  }
  return pair_index((m - 1) / 2, 0);
}

BaseGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open edge list: " + path);
  std::string line;
  if (!std::getline(in, line)) throw usage_error("empty edge list: " + path);

  BaseGraph g;
  {
    std::istringstream head(line);
    if (!(head >> g.n >> g.d >> g.distinguished) || g.n <= 0 || g.d <= 0 ||
        g.distinguished < 0 || g.distinguished >= g.n) {
      throw usage_error("edge list header must be \"n d u\" with 0 <= u < n");
    }
    std::string extra;
    if (head >> extra) throw usage_error("trailing tokens in edge list header");
  }
  g.adjacency.assign(std::size_t(g.n) * g.n, 0.0);

  std::set<std::pair<int, int>> seen;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream row(line);
    int v = -1, w = -1;
    std::string extra;
    if (!(row >> v >> w) || (row >> extra)) {
      throw usage_error("malformed edge at line " + std::to_string(line_no));
    }
    if (v < 0 || v >= g.n || w < 0 || w >= g.n) {
      throw usage_error("vertex out of range at line " + std::to_string(line_no));
    }
    if (v == w) {
      throw usage_error("self-loop at line " + std::to_string(line_no));
    }
    const auto key = std::minmax(v, w);
    if (!seen.insert(key).second) {
      throw usage_error("duplicate edge at line " + std::to_string(line_no));
    }
    g.adjacency[std::size_t(v) * g.n + w] = 1.0;
    g.adjacency[std::size_t(w) * g.n + v] = 1.0;
  }

  for (int v = 0; v < g.n; ++v) {
    int deg = 0;
    for (int w = 0; w < g.n; ++w) deg += (g.at(v, w) != 0.0);
    if (deg != g.d) {
      throw usage_error("vertex " + std::to_string(v) + " has degree " +
                        std::to_string(deg) + ", expected " +
                        std::to_string(g.d));
    }
  }

  std::vector<char> reached(g.n, 0);
  std::deque<int> queue{0};
  reached[0] = 1;
  int count = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w = 0; w < g.n; ++w) {
      if (g.at(v, w) != 0.0 && !reached[w]) {
        reached[w] = 1;
        ++count;
        queue.push_back(w);
      }
    }
  }
  if (count != g.n) throw usage_error("graph is not connected");
  return g;
}

}  // namespace spire
