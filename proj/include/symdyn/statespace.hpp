#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "symdyn/numeric.hpp"
#include "symdyn/symmetry.hpp"

namespace symdyn {

// A state phi: V -> {0..q-1} packed as a base-q integer. Vertex 0 is the
// most significant digit, so numeric order on codes is lexicographic order
// on digit sequences.
using StateCode = std::uint64_t;

class StateSpace {
 public:
  // Requires q >= 2 and q^n <= 2^64 (codes must fit in 64 bits).
  StateSpace(int vertices, unsigned q);

  int vertices() const { return n_; }
  unsigned q() const { return q_; }
  BigInt total_states() const;
  // q^n when it fits in 64 bits; throws CapExceeded otherwise (q = 2, n = 64).
  std::uint64_t total_states_u64() const;

  unsigned digit(StateCode code, int vertex) const;
  StateCode with_digit(StateCode code, int vertex, unsigned value) const;
  std::vector<unsigned> digits(StateCode code) const;
  StateCode from_digits(const std::vector<unsigned>& digits) const;
  // Digit string, vertex 0 first (e.g. "100" for n = 3, code 4).
  std::string to_string(StateCode code) const;
  bool contains(StateCode code) const;

  bool operator==(const StateSpace&) const = default;

 private:
  int n_;
  unsigned q_;
  std::vector<StateCode> place_;  // place_[v] = q^(n-1-v)
};

// (g phi)(x) = phi(g^-1 x): the value at vertex y moves to vertex g(y).
StateCode act(const StateSpace& space, const Perm& g, StateCode code);

// A permutation group compiled for fast action on state codes. For q = 2
// every element becomes a set of byte lookup tables; other q fall back to
// digit arithmetic.
class GroupAction {
 public:
  GroupAction(PermGroup group, StateSpace space);

  const PermGroup& group() const { return group_; }
  const StateSpace& space() const { return space_; }
  std::size_t order() const { return group_.order(); }

  StateCode apply(std::size_t element, StateCode code) const;

  // Minimal code in the orbit of `code` and the index of the first
  // (lexicographically least) element reaching it.
  std::pair<StateCode, std::size_t> canonical(StateCode code) const;

 private:
  PermGroup group_;
  StateSpace space_;
  int chunks_ = 0;
  std::vector<StateCode> tables_;  // [element][chunk][byte]
};

struct OrbitRecord {
  StateCode representative;
  std::uint64_t size;
};

struct OrbitCaps {
  std::uint64_t state_cap = std::uint64_t{1} << 28;
  // Above this many states the state -> orbit index is recomputed on
  // demand through canonical() instead of stored.
  std::uint64_t index_cap = std::uint64_t{1} << 25;
};

// All orbits of Q^V under a group, numbered by decreasing size and then by
// increasing representative code. Representatives are minimal codes.
class OrbitTable {
 public:
  // Exhaustive scan of all codes. Throws CapExceeded above caps.state_cap.
  static OrbitTable enumerate(std::shared_ptr<const GroupAction> action, OrbitCaps caps = {});

  // Rebuilds a table from stored records (e.g. a cache); validates that the
  // records cover the state space and that representatives are minimal.
  static OrbitTable from_records(std::shared_ptr<const GroupAction> action,
                                 std::vector<OrbitRecord> records, OrbitCaps caps = {});

  const GroupAction& action() const { return *action_; }
  std::shared_ptr<const GroupAction> action_ptr() const { return action_; }
  const StateSpace& space() const { return action_->space(); }

  std::size_t size() const { return orbits_.size(); }
  const std::vector<OrbitRecord>& orbits() const { return orbits_; }
  const OrbitRecord& operator[](std::size_t id) const { return orbits_[id]; }
  BigInt total_states() const { return space().total_states(); }
  bool has_index() const { return !index_.empty(); }

  std::uint32_t orbit_of(StateCode code) const;

 private:
  OrbitTable() = default;
  void finish(std::vector<OrbitRecord> records, std::vector<std::uint32_t> provisional);

  std::shared_ptr<const GroupAction> action_;
  std::vector<OrbitRecord> orbits_;
  std::vector<std::uint32_t> index_;
  std::vector<std::pair<StateCode, std::uint32_t>> by_representative_;
};

// Orbit CSV: header "orbit_id,representative_code,size".
void write_orbit_csv(std::ostream& out, const OrbitTable& table);
std::vector<OrbitRecord> read_orbit_csv(std::istream& in);

// Binary dump: little-endian u64 count, then (representative, size) pairs.
void write_orbit_binary(std::ostream& out, const OrbitTable& table);
std::vector<OrbitRecord> read_orbit_binary(std::istream& in);

}  // namespace symdyn
