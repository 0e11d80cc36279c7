#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/lattice.hpp"
#include "symdyn/rules.hpp"
#include "symdyn/statespace.hpp"
#include "symdyn/symmetry.hpp"

namespace symdyn {

enum class GroupMode { full, translations };

// Full automorphism group, or the translation subgroup of a square torus.
PermGroup build_group(const Lattice& lattice, GroupMode mode, std::size_t cap = kDefaultGroupCap);

// Comma or whitespace separated rule specs; "all136"/"reps" expands to the
// value-swap class representatives, "all" to every code.
std::vector<Rule> parse_rule_list(const std::vector<std::string>& specs, int k);

// "glider" (square Moore lattices), "zeros", a 0/1 string with one digit
// per vertex (vertex 0 first), or a decimal code.
StateCode parse_state(std::string_view text, const Lattice& lattice);

// The five-cell glider near the top-left corner of square(N, moore, ...).
StateCode glider_state(const Lattice& lattice);

// Orbit table, read from or written to `cache_dir` when it is non-empty.
// Keyed by a hash of the serialized lattice, q and the group mode.
OrbitTable load_or_enumerate(const Lattice& lattice, std::shared_ptr<const GroupAction> action,
                             GroupMode mode, const std::string& cache_dir, OrbitCaps caps);

// Entry point of the command-line tool. Exit codes: 0 success, 1 runtime
// error, 2 budget exhausted, CLI11's codes for usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symdyn
