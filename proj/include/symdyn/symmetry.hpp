#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/numeric.hpp"

namespace symdyn {

class Lattice;

// A permutation of {0..n-1}; images()[i] is the image of i.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);  // throws unless a bijection
  static Perm identity(int n);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator[](int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  Perm inverse() const;
  // Number of cycles, fixed points included.
  int cycle_count() const;
  // "(0 1 2)(3 4)"; fixed points omitted, identity renders as "()".
  std::string cycle_notation() const;

  // (a * b)(x) = a(b(x)).
  friend Perm operator*(const Perm& a, const Perm& b);
  auto operator<=>(const Perm&) const = default;

 private:
  std::vector<int> images_;
};

inline constexpr std::size_t kDefaultGroupCap = 10'000'000;

// A permutation group held both as generators and as the full, sorted list
// of its elements. Elements are in lexicographic order of their image
// sequences, so element 0 is always the identity.
class PermGroup {
 public:
  // Closes `generators` under composition. Throws CapExceeded once more than
  // `cap` elements have been produced.
  static PermGroup generate(int degree, std::vector<Perm> generators,
                            std::size_t cap = kDefaultGroupCap);

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return generators_; }
  const std::vector<Perm>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }

 private:
  int degree_ = 0;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
};

// Full automorphism group of the lattice, found by equitable-partition
// refinement and a backtracking search over individualized vertices.
// Generators form a strong generating set along the search's base; there
// are at most n-1 of them. Throws CapExceeded when the group order exceeds
// `cap`.
PermGroup automorphisms(const Lattice& lattice, std::size_t cap = kDefaultGroupCap);

// Translation subgroup Z_N x Z_N of a square(N, ...) lattice in its
// y * N + x vertex numbering.
PermGroup square_translations(int side);

// Orbits of the vertex set, each sorted, ordered by smallest member.
std::vector<std::vector<int>> vertex_orbits(const PermGroup& group);
bool is_transitive(const PermGroup& group);

// Number of orbits of Q^V for |Q| = q, via Burnside's lemma.
BigInt burnside_count(const PermGroup& group, unsigned q);

// Expected |Aut| of the N x N square torus: 8 N^2, except 384 for N = 4.
std::uint64_t square_group_order(int side);

enum class PermFormat { cycles, csv };
std::string format_perm(const Perm& p, PermFormat format);
Perm parse_perm_csv(std::string_view line);

}  // namespace symdyn
