#include "symdyn/symmetry.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

#include "symdyn/error.hpp"
#include "symdyn/lattice.hpp"

namespace symdyn {

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> hit(images_.size(), false);
  for (int x : images_) {
    if (x < 0 || x >= degree() || hit[x]) throw Error("not a permutation");
    hit[x] = true;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 0);
  return Perm(std::move(images));
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < degree(); ++i) inv[images_[i]] = i;
  Perm p;
  p.images_ = std::move(inv);
  return p;
}

int Perm::cycle_count() const {
  std::vector<bool> seen(images_.size(), false);
  int cycles = 0;
  for (int i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (int j = i; !seen[j]; j = images_[j]) seen[j] = true;
  }
  return cycles;
}

std::string Perm::cycle_notation() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += '(';
    for (int j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (j != i) out += ' ';
      out += std::to_string(j);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Perm operator*(const Perm& a, const Perm& b) {
  std::vector<int> images(b.images_.size());
  for (int i = 0; i < b.degree(); ++i) images[i] = a.images_[b.images_[i]];
  Perm p;
  p.images_ = std::move(images);
  return p;
}

PermGroup PermGroup::generate(int degree, std::vector<Perm> generators, std::size_t cap) {
  for (const auto& g : generators)
    if (g.degree() != degree) throw Error("generator degree mismatch");
  PermGroup group;
  group.degree_ = degree;
  std::set<Perm> elements{Perm::identity(degree)};
  std::vector<Perm> frontier{Perm::identity(degree)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& e : frontier)
      for (const auto& s : generators) {
        Perm x = s * e;
        if (elements.insert(x).second) {
          if (elements.size() > cap)
            throw CapExceeded("group has more than " + std::to_string(cap) + " elements");
          next.push_back(std::move(x));
        }
      }
    frontier = std::move(next);
  }
  group.generators_ = std::move(generators);
  group.elements_.assign(elements.begin(), elements.end());
  return group;
}

namespace {

// Ordered partition of the vertex set. Cells are sets; the order of
// vertices inside a cell carries no meaning.
using Cells = std::vector<std::vector<int>>;

class Refiner {
 public:
  explicit Refiner(const Lattice& lattice)
      : lattice_(lattice), cell_of_(lattice.size()), count_(lattice.size()) {}

  // Refines to the coarsest equitable partition finer than `cells`. Split
  // pieces replace their parent in increasing order of neighbor count, so
  // the result depends only on the graph and the ordered cell sets; it
  // commutes with relabeling by any automorphism.
  void refine(Cells& cells) {
    index(cells);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s < cells.size() && !changed; ++s)
        for (std::size_t t = 0; t < cells.size() && !changed; ++t) {
          if (cells[t].size() > 1 && split(cells, static_cast<int>(s), t)) {
            index(cells);
            changed = true;
          }
        }
    }
  }

  // Cell sizes plus the quotient matrix of the equitable partition.
  std::vector<int> signature(const Cells& cells) {
    index(cells);
    std::vector<int> sig;
    sig.push_back(static_cast<int>(cells.size()));
    std::vector<int> row(cells.size());
    for (const auto& cell : cells) {
      sig.push_back(static_cast<int>(cell.size()));
      std::fill(row.begin(), row.end(), 0);
      for (int u : lattice_.neighbors(cell.front())) ++row[cell_of_[u]];
      for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0) {
          sig.push_back(static_cast<int>(j));
          sig.push_back(row[j]);
        }
      sig.push_back(-1);
    }
    return sig;
  }

 private:
  void index(const Cells& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c)
      for (int v : cells[c]) cell_of_[v] = static_cast<int>(c);
  }

  bool split(Cells& cells, int splitter, std::size_t target) {
    auto& cell = cells[target];
    for (int v : cell) {
      int c = 0;
      for (int u : lattice_.neighbors(v)) c += (cell_of_[u] == splitter);
      count_[v] = c;
    }
    const int first = count_[cell.front()];
    if (std::all_of(cell.begin(), cell.end(), [&](int v) { return count_[v] == first; }))
      return false;
    std::vector<int> sorted = cell;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](int a, int b) { return count_[a] < count_[b]; });
    Cells pieces;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (i == 0 || count_[sorted[i]] != count_[sorted[i - 1]]) pieces.emplace_back();
      pieces.back().push_back(sorted[i]);
    }
    cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(target));
    cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(target), pieces.begin(), pieces.end());
    return true;
  }

  const Lattice& lattice_;
  std::vector<int> cell_of_;
  std::vector<int> count_;
};

Cells individualize(const Cells& cells, std::size_t cell, int vertex) {
  Cells out;
  out.reserve(cells.size() + 1);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (c != cell) {
      out.push_back(cells[c]);
      continue;
    }
    out.push_back({vertex});
    std::vector<int> rest;
    for (int v : cells[c])
      if (v != vertex) rest.push_back(v);
    out.push_back(std::move(rest));
  }
  return out;
}

bool is_discrete(const Cells& cells) {
  return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.size() == 1; });
}

class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const Lattice& lattice) : lattice_(lattice), refiner_(lattice) {
    Cells cells{std::vector<int>(lattice.size())};
    std::iota(cells[0].begin(), cells[0].end(), 0);
    refiner_.refine(cells);
    while (true) {
      path_.push_back(cells);
      signatures_.push_back(refiner_.signature(cells));
      if (is_discrete(cells)) break;
      const auto target = static_cast<std::size_t>(
          std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; }) -
          cells.begin());
      const int v = *std::min_element(cells[target].begin(), cells[target].end());
      target_cell_.push_back(target);
      base_.push_back(v);
      cells = individualize(cells, target, v);
      refiner_.refine(cells);
    }
    for (const auto& cell : path_.back()) leaf_.push_back(cell.front());
  }

  PermGroup run(std::size_t cap) {
    std::vector<Perm> generators;
    BigInt order = 1;
    for (std::size_t level = base_.size(); level-- > 0;) {
      const Cells& here = path_[level];
      std::vector<int> candidates = here[target_cell_[level]];
      std::sort(candidates.begin(), candidates.end());
      std::vector<bool> in_orbit = orbit_of(base_[level], generators);
      for (int w : candidates) {
        if (in_orbit[w]) continue;
        Cells next = individualize(here, target_cell_[level], w);
        refiner_.refine(next);
        if (refiner_.signature(next) != signatures_[level + 1]) continue;
        Perm found;
        if (extend(level + 1, next, &found)) {
          generators.push_back(std::move(found));
          in_orbit = orbit_of(base_[level], generators);
        }
      }
      order *= std::count(in_orbit.begin(), in_orbit.end(), true);
      if (order > cap)
        throw CapExceeded("automorphism group of " + lattice_.name() + " exceeds " +
                          std::to_string(cap) + " elements");
    }
    PermGroup group = PermGroup::generate(lattice_.size(), std::move(generators), cap);
    if (group.order() != order) throw Error("automorphism search: inconsistent group order");
    return group;
  }

 private:
  // Depth-first search for any automorphism whose leaf extends `cells`.
  bool extend(std::size_t level, const Cells& cells, Perm* out) {
    if (level == base_.size()) {
      std::vector<int> images(lattice_.size());
      for (std::size_t j = 0; j < leaf_.size(); ++j) images[leaf_[j]] = cells[j].front();
      for (int u = 0; u < lattice_.size(); ++u)
        for (int v : lattice_.neighbors(u))
          if (!lattice_.adjacent(images[u], images[v])) return false;
      *out = Perm(std::move(images));
      return true;
    }
    for (int w : cells[target_cell_[level]]) {
      Cells next = individualize(cells, target_cell_[level], w);
      refiner_.refine(next);
      if (refiner_.signature(next) != signatures_[level + 1]) continue;
      if (extend(level + 1, next, out)) return true;
    }
    return false;
  }

  std::vector<bool> orbit_of(int v, const std::vector<Perm>& generators) const {
    std::vector<bool> in(lattice_.size(), false);
    std::vector<int> stack{v};
    in[v] = true;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (const auto& g : generators)
        if (!in[g[x]]) {
          in[g[x]] = true;
          stack.push_back(g[x]);
        }
    }
    return in;
  }

  const Lattice& lattice_;
  Refiner refiner_;
  std::vector<Cells> path_;
  std::vector<std::vector<int>> signatures_;
  std::vector<std::size_t> target_cell_;
  std::vector<int> base_;
  std::vector<int> leaf_;
};

}  // namespace

PermGroup automorphisms(const Lattice& lattice, std::size_t cap) {
  return AutomorphismSearch(lattice).run(cap);
}

PermGroup square_translations(int side) {
  const int n = side * side;
  std::vector<int> dx(n), dy(n);
  for (int y = 0; y < side; ++y)
    for (int x = 0; x < side; ++x) {
      dx[y * side + x] = y * side + (x + 1) % side;
      dy[y * side + x] = ((y + 1) % side) * side + x;
    }
  return PermGroup::generate(n, {Perm(std::move(dx)), Perm(std::move(dy))});
}

std::vector<std::vector<int>> vertex_orbits(const PermGroup& group) {
  const int n = group.degree();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : group.generators())
    for (int v = 0; v < n; ++v) {
      const int a = find(v), b = find(g[v]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<int>> orbits;
  std::vector<int> slot(n, -1);
  for (int v = 0; v < n; ++v) {
    const int root = find(v);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(orbits.size());
      orbits.emplace_back();
    }
    orbits[slot[root]].push_back(v);
  }
  return orbits;
}

bool is_transitive(const PermGroup& group) { return vertex_orbits(group).size() == 1; }

BigInt burnside_count(const PermGroup& group, unsigned q) {
  if (q == 0) throw Error("burnside_count: q must be positive");
  BigInt sum = 0;
  for (const auto& g : group.elements()) sum += big_pow(BigInt(q), static_cast<unsigned>(g.cycle_count()));
  const BigInt order = group.order();
  if (sum % order != 0) throw Error("burnside_count: sum not divisible by group order");
  return sum / order;
}

std::uint64_t square_group_order(int side) {
  if (side < 3) throw Error("square_group_order: need side >= 3");
  if (side == 4) return 384;
  return 8ull * static_cast<std::uint64_t>(side) * static_cast<std::uint64_t>(side);
}

std::string format_perm(const Perm& p, PermFormat format) {
  if (format == PermFormat::cycles) return p.cycle_notation();
  std::string out;
  for (int i = 0; i < p.degree(); ++i) {
    if (i) out += ',';
    out += std::to_string(p[i]);
  }
  return out;
}

Perm parse_perm_csv(std::string_view line) {
  std::vector<int> images;
  while (!line.empty()) {
    const auto comma = line.find(',');
    std::string_view tok = line.substr(0, comma);
    while (!tok.empty() && (tok.front() == ' ')) tok.remove_prefix(1);
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\r')) tok.remove_suffix(1);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError(0, "bad permutation entry '" + std::string(tok) + "'");
    images.push_back(value);
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return Perm(std::move(images));
}

}  // namespace symdyn
