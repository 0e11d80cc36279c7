#pragma once

// Brute-force reference implementations. They share no code with the
// library beyond the Lattice container and are only fast enough for small
// inputs.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "symdyn/lattice.hpp"

namespace oracle {

using Images = std::vector<int>;

inline bool adjacent(const symdyn::Lattice& lat, int u, int v) {
  for (int w : lat.neighbors(u))
    if (w == v) return true;
  return false;
}

// Every automorphism by plain backtracking over vertex images in BFS order.
inline std::vector<Images> automorphisms(const symdyn::Lattice& lat) {
  const int n = lat.size();
  std::vector<int> order{0};
  std::vector<bool> queued(n, false);
  queued[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int w : lat.neighbors(order[i]))
      if (!queued[w]) {
        queued[w] = true;
        order.push_back(w);
      }
  for (int v = 0; v < n; ++v)
    if (!queued[v]) order.push_back(v);

  std::vector<Images> found;
  Images image(n, -1);
  std::vector<bool> used(n, false);
  std::function<void(int)> extend = [&](int depth) {
    if (depth == n) {
      found.push_back(image);
      return;
    }
    const int v = order[depth];
    for (int w = 0; w < n; ++w) {
      if (used[w]) continue;
      bool ok = true;
      for (int d = 0; d < depth && ok; ++d) {
        const int u = order[d];
        ok = adjacent(lat, u, v) == adjacent(lat, image[u], w);
      }
      if (!ok) continue;
      image[v] = w;
      used[w] = true;
      extend(depth + 1);
      used[w] = false;
      image[v] = -1;
    }
  };
  extend(0);
  return found;
}

// Bit n-1-v holds vertex v.
inline std::uint64_t permute_state(const Images& g, std::uint64_t s, int n) {
  std::uint64_t out = 0;
  for (int v = 0; v < n; ++v)
    if ((s >> (n - 1 - v)) & 1u) out |= std::uint64_t{1} << (n - 1 - g[v]);
  return out;
}

inline Images compose(const Images& a, const Images& b) {
  Images c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

// A small subset of `elements` that generates all of them.
inline std::vector<Images> generating_subset(const std::vector<Images>& elements) {
  std::vector<Images> gens;
  std::set<Images> closure{elements.front()};
  for (const auto& e : elements) {
    if (closure.count(e)) continue;
    gens.push_back(e);
    std::vector<Images> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
      std::vector<Images> next;
      for (const auto& x : frontier)
        for (const auto& g : gens) {
          Images y = compose(g, x);
          if (closure.insert(y).second) next.push_back(std::move(y));
        }
      frontier = std::move(next);
    }
  }
  return gens;
}

// Orbit label (smallest member) of every binary state, via union-find over
// generator moves.
inline std::vector<std::uint32_t> orbit_labels(const symdyn::Lattice& lat) {
  const int n = lat.size();
  const auto gens = generating_subset(automorphisms(lat));
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<std::uint32_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint64_t s = 0; s < total; ++s)
    for (const auto& g : gens) {
      const auto a = find(static_cast<std::uint32_t>(s));
      const auto b = find(static_cast<std::uint32_t>(permute_state(g, s, n)));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  for (std::uint64_t s = 0; s < total; ++s) parent[s] = find(static_cast<std::uint32_t>(s));
  return parent;
}

inline std::uint64_t step(const symdyn::Lattice& lat, std::uint64_t rule_code, std::uint64_t s) {
  const int n = lat.size();
  std::uint64_t out = 0;
  for (int v = 0; v < n; ++v) {
    int sum = 0;
    for (int u : lat.neighbors(v)) sum += static_cast<int>((s >> (n - 1 - u)) & 1u);
    const int c = static_cast<int>((s >> (n - 1 - v)) & 1u);
    if ((rule_code >> (2 * sum + c)) & 1u) out |= std::uint64_t{1} << (n - 1 - v);
  }
  return out;
}

inline long long ising_energy(const symdyn::Lattice& lat, std::uint64_t s) {
  const int n = lat.size();
  auto spin = [&](int v) { return ((s >> (n - 1 - v)) & 1u) ? 1 : -1; };
  long long e = 0;
  for (int u = 0; u < n; ++u)
    for (int v : lat.neighbors(u))
      if (u < v) e -= spin(u) * spin(v);
  return e;
}

inline std::map<long long, std::uint64_t> energy_histogram(const symdyn::Lattice& lat) {
  std::map<long long, std::uint64_t> hist;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << lat.size()); ++s) ++hist[ising_energy(lat, s)];
  return hist;
}

// Number of simple cycles of the given length (each counted once).
inline std::uint64_t count_cycles(const symdyn::Lattice& lat, int length) {
  std::uint64_t count = 0;
  std::vector<int> path;
  std::vector<bool> on(lat.size(), false);
  std::function<void(int)> walk = [&](int v) {
    if (static_cast<int>(path.size()) == length) {
      if (adjacent(lat, v, path.front())) ++count;
      return;
    }
    for (int w : lat.neighbors(v))
      if (!on[w] && w > path.front()) {
        on[w] = true;
        path.push_back(w);
        walk(w);
        path.pop_back();
        on[w] = false;
      }
  };
  for (int s = 0; s < lat.size(); ++s) {
    path = {s};
    on[s] = true;
    walk(s);
    on[s] = false;
  }
  return count / 2;  // both directions
}

}  // namespace oracle
