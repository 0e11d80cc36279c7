#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/lattice.hpp"
#include "symdyn/numeric.hpp"
#include "symdyn/rules.hpp"
#include "symdyn/statespace.hpp"
#include "symdyn/symmetry.hpp"

namespace symdyn {

// Synchronous update of a binary symmetric rule on a lattice with at most
// 64 vertices: every vertex reads the sum of its neighbors and its own value.
class Stepper {
 public:
  Stepper(const Lattice& lattice, const Rule& rule);

  StateCode operator()(StateCode state) const;

 private:
  int n_;
  std::uint64_t rule_code_;
  std::vector<StateCode> neighbor_masks_;  // by bit position
};

StateCode step(const Lattice& lattice, const Rule& rule, StateCode state);

struct PortraitCycle {
  // Orbit ids in successor order, starting from the smallest id.
  std::vector<std::uint32_t> orbits;
  std::uint64_t orbit_period = 0;
  // Steps until the representative of orbits[0] recurs exactly.
  std::uint64_t state_period = 0;
  // No orbit outside the cycle maps into it.
  bool isolated = false;
  bool spaceship = false;
  // Lexicographically least g with g * start = step^orbit_period(start).
  Perm shift;
  // Number of state-level cycles this orbit cycle stands for.
  BigInt state_cycles;
  BigInt basin_size;
  Rational weight;
  // Orbit ids visited over one state period from the start state.
  std::vector<std::uint32_t> trace;
};

// Phase portrait of a rule modulo the symmetry group: the functional graph
// the dynamics induces on orbit ids.
class Portrait {
 public:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  const Rule& rule() const { return rule_; }
  std::size_t size() const { return successor_.size(); }
  std::uint32_t successor(std::uint32_t orbit) const { return successor_[orbit]; }
  const std::vector<std::uint32_t>& successors() const { return successor_; }
  const std::vector<PortraitCycle>& cycles() const { return cycles_; }
  // Cycle the orbit lies on, or kNone.
  std::uint32_t cycle_on(std::uint32_t orbit) const { return cycle_on_[orbit]; }
  // Cycle the orbit eventually reaches.
  std::uint32_t basin_of(std::uint32_t orbit) const { return basin_of_[orbit]; }
  // Orbits without a predecessor (gardens of Eden).
  const std::vector<std::uint32_t>& eden() const { return eden_; }

  BigInt state_cycle_count() const;
  BigInt spaceship_state_cycle_count() const;
  std::size_t spaceship_cycle_count() const;

 private:
  friend Portrait build_portrait(const Lattice&, const OrbitTable&, const Rule&, int);
  explicit Portrait(Rule rule) : rule_(rule) {}

  Rule rule_;
  std::vector<std::uint32_t> successor_;
  std::vector<std::uint32_t> cycle_on_;
  std::vector<std::uint32_t> basin_of_;
  std::vector<PortraitCycle> cycles_;
  std::vector<std::uint32_t> eden_;
};

Portrait build_portrait(const Lattice& lattice, const OrbitTable& table, const Rule& rule,
                        int workers = 1);

std::vector<std::uint32_t> gardens_of_eden(const Portrait& portrait);

// Bijectivity of the global map, decided on orbits: the induced map must be
// a bijection on orbit ids that preserves orbit sizes.
bool is_reversible(const Portrait& portrait, const OrbitTable& table);
bool is_reversible(const Lattice& lattice, const OrbitTable& table, const Rule& rule);

enum class Conserved { magnetization, energy };

struct Property {
  enum class Kind { reversible, has_isolated_cycle, has_limit_cycle, has_spaceship, has_eden, conserves };
  Kind kind = Kind::reversible;
  // State-level period for the cycle predicates; 0 matches any period.
  std::uint64_t length = 0;
  Conserved conserved = Conserved::magnetization;

  std::string name() const;
};

// "reversible", "has_isolated_cycle(6)", "has_limit_cycle", "has_spaceship",
// "has_eden", "conserves(magnetization)", "conserves(energy)".
Property parse_property(std::string_view text);

bool evaluate_property(const Property& property, const Lattice& lattice, const OrbitTable& table,
                       const Portrait& portrait);

struct ScanRow {
  std::uint64_t rule_code;
  std::string property;
  bool value;
};

// Rows ordered by rule code, then by the order of `properties`.
std::vector<ScanRow> scan_rules(const Lattice& lattice, const OrbitTable& table,
                                std::vector<Rule> rules, const std::vector<Property>& properties,
                                int workers = 1);

struct TrajectoryOptions {
  std::uint64_t max_steps = 1'000'000;
  // Cap on stored canonical forms.
  std::size_t max_stored = std::size_t{1} << 22;
};

struct TrajectoryResult {
  std::uint64_t transient = 0;
  std::uint64_t orbit_period = 0;
  std::uint64_t state_period = 0;
  bool spaceship = false;
  Perm shift;
  StateCode cycle_start = 0;
};

// Follows one trajectory, recognizing returns to an earlier orbit through
// minimal images; works on lattices too large to enumerate. Throws
// BudgetExhausted when no orbit recurs within max_steps.
TrajectoryResult trajectory_analysis(const Lattice& lattice, const GroupAction& action,
                                     const Rule& rule, StateCode start,
                                     TrajectoryOptions options = {});

void write_portrait_dot(std::ostream& out, const Portrait& portrait, const OrbitTable& table);
// orbit_id,successor_id,size,cycle_id,is_spaceship,basin_of
void write_portrait_csv(std::ostream& out, const Portrait& portrait, const OrbitTable& table);
// rule_code,property,value
void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows);

}  // namespace symdyn
