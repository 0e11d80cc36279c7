#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace symdyn {

enum class Embedding { none, sphere, torus, klein, circle, plane };

std::string_view embedding_name(Embedding e);
Embedding parse_embedding(std::string_view name);

enum class Neighborhood { von_neumann, moore };
enum class Closure { torus, klein };

// A k-regular simple undirected graph on vertices 0..n-1.
//
// The constructor validates symmetry, absence of loops and repeated
// neighbors, and k-regularity. Neighbor lists are kept sorted so that two
// lattices with the same edge set compare equal regardless of input order.
// The embedding tag is descriptive only; nothing downstream reads it.
class Lattice {
 public:
  Lattice(std::string name, std::vector<std::vector<int>> adjacency,
          Embedding embedding = Embedding::none);

  int size() const { return static_cast<int>(adjacency_.size()); }
  int valency() const { return valency_; }
  std::size_t edge_count() const {
    return adjacency_.size() * static_cast<std::size_t>(valency_) / 2;
  }
  std::span<const int> neighbors(int v) const { return adjacency_[v]; }
  const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
  bool adjacent(int u, int v) const;

  const std::string& name() const { return name_; }
  Embedding embedding() const { return embedding_; }

  bool operator==(const Lattice&) const = default;

 private:
  std::string name_;
  std::vector<std::vector<int>> adjacency_;
  int valency_ = 0;
  Embedding embedding_ = Embedding::none;
};

// Named constructors.
Lattice tetrahedron();
Lattice hexahedron();
Lattice icosahedron();
Lattice dodecahedron();
Lattice buckyball();
Lattice circle(int n);
Lattice square(int side, Neighborhood neighborhood = Neighborhood::von_neumann,
               Closure closure = Closure::torus);
// Brick-wall hexagonal grid, `width` columns by `height` rows of vertices.
Lattice graphene(int width, int height, Closure closure = Closure::torus);
// `strips` zigzag strips of `strip_length` vertices each.
Lattice triangular(int strips, int strip_length,
                   Closure closure = Closure::torus);

// Builds a lattice from a textual spec such as "dodecahedron", "circle(24)",
// "square(8,moore,torus)" or "graphene(6,4,klein)". Omitted trailing
// parameters take their defaults (von Neumann neighborhood, torus closure).
Lattice make_named(std::string_view spec);

// Adjacency document:
//   # optional comments; "# name: ..." and "# embedding: ..." are kept
//   n k
//   i: j1 j2 ... jk        (one line per vertex, 0-based)
Lattice parse_lattice(std::string_view text);
std::string serialize(const Lattice& lattice);

}  // namespace symdyn
