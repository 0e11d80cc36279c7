#include <gtest/gtest.h>

#include <map>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "symdyn/error.hpp"
#include "symdyn/statespace.hpp"

using namespace symdyn;

namespace {

std::shared_ptr<const GroupAction> full_action(const Lattice& lat, unsigned q = 2) {
  return std::make_shared<const GroupAction>(automorphisms(lat), StateSpace(lat.size(), q));
}

TEST(StateSpace, DigitsVertexZeroMostSignificant) {
  const StateSpace s(3, 2);
  EXPECT_EQ(s.to_string(4), "100");
  EXPECT_EQ(s.digit(4, 0), 1u);
  EXPECT_EQ(s.with_digit(0, 2, 1), 1u);
  const StateSpace t(3, 3);
  EXPECT_EQ(t.total_states(), BigInt(27));
  EXPECT_EQ(t.from_digits({2, 0, 1}), 19u);
  EXPECT_EQ(t.digits(19), (std::vector<unsigned>{2, 0, 1}));
  EXPECT_FALSE(t.contains(27));
  EXPECT_THROW(StateSpace(41, 3), Error);
  EXPECT_EQ(StateSpace(64, 2).total_states(), BigInt(1) << 64);
  EXPECT_THROW(StateSpace(64, 2).total_states_u64(), CapExceeded);
}

TEST(Action, MovesValueAtVertexToItsImage) {
  const StateSpace s(4, 2);
  const Perm g({1, 2, 3, 0});
  // Only vertex 0 set; g moves it to vertex 1.
  EXPECT_EQ(s.to_string(act(s, g, s.from_digits({1, 0, 0, 0}))), "0100");
  // Homomorphism: (gh) phi = g (h phi).
  const Perm h({0, 2, 1, 3});
  for (StateCode c = 0; c < 16; ++c) EXPECT_EQ(act(s, g * h, c), act(s, g, act(s, h, c)));
}

TEST(Action, TablesAgreeWithDigitArithmetic) {
  const Lattice lat = dodecahedron();
  const GroupAction action(automorphisms(lat), StateSpace(lat.size(), 2));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const StateCode c = rng() & ((StateCode{1} << 20) - 1);
    const std::size_t e = rng() % action.order();
    ASSERT_EQ(action.apply(e, c), act(action.space(), action.group().elements()[e], c));
  }
}

TEST(Canonical, IsOrbitMinimumWithLeastElement) {
  const Lattice lat = hexahedron();
  const GroupAction action(automorphisms(lat), StateSpace(8, 2));
  for (StateCode c = 0; c < 256; ++c) {
    StateCode best = c;
    for (std::size_t e = 0; e < action.order(); ++e) best = std::min(best, action.apply(e, c));
    const auto [min, which] = action.canonical(c);
    ASSERT_EQ(min, best);
    ASSERT_EQ(action.apply(which, c), best);
    for (std::size_t e = 0; e < which; ++e) ASSERT_NE(action.apply(e, c), best);
  }
}

void expect_matches_oracle(const Lattice& lat) {
  const OrbitTable table = OrbitTable::enumerate(full_action(lat));
  const auto labels = oracle::orbit_labels(lat);
  std::map<std::uint32_t, std::uint64_t> oracle_sizes;
  for (auto l : labels) ++oracle_sizes[l];
  ASSERT_EQ(table.size(), oracle_sizes.size()) << lat.name();
  for (std::size_t i = 0; i < table.size(); ++i) {
    // The oracle labels orbits by their smallest member.
    ASSERT_TRUE(oracle_sizes.count(static_cast<std::uint32_t>(table[i].representative)));
    ASSERT_EQ(table[i].size, oracle_sizes[static_cast<std::uint32_t>(table[i].representative)]);
    if (i > 0) {
      const auto& a = table[i - 1];
      const auto& b = table[i];
      ASSERT_TRUE(a.size > b.size || (a.size == b.size && a.representative < b.representative));
    }
  }
  for (std::uint64_t s = 0; s < labels.size(); ++s)
    ASSERT_EQ(table[table.orbit_of(s)].representative, labels[s]);
}

TEST(OrbitTable, MatchesUnionFindOracle) {
  expect_matches_oracle(tetrahedron());
  expect_matches_oracle(hexahedron());
  expect_matches_oracle(icosahedron());
  expect_matches_oracle(circle(12));
  expect_matches_oracle(square(4));
}

TEST(OrbitTable, DodecahedronMatchesOracle) { expect_matches_oracle(dodecahedron()); }

TEST(OrbitTable, PublishedCounts) {
  EXPECT_EQ(OrbitTable::enumerate(full_action(tetrahedron())).size(), 5u);
  EXPECT_EQ(OrbitTable::enumerate(full_action(hexahedron())).size(), 22u);
  EXPECT_EQ(OrbitTable::enumerate(full_action(icosahedron())).size(), 82u);
  EXPECT_EQ(OrbitTable::enumerate(full_action(dodecahedron())).size(), 9436u);
}

TEST(OrbitTable, SizesDivideGroupOrderAndSumToTotal) {
  const auto action = full_action(dodecahedron());
  const OrbitTable table = OrbitTable::enumerate(action);
  std::uint64_t sum = 0;
  for (const auto& r : table.orbits()) {
    EXPECT_EQ(action->order() % r.size, 0u);
    sum += r.size;
  }
  EXPECT_EQ(sum, 1u << 20);
  EXPECT_EQ(BigInt(table.size()), burnside_count(action->group(), 2));
}

TEST(OrbitTable, ThreeValuedStates) {
  const auto action = full_action(hexahedron(), 3);
  const OrbitTable table = OrbitTable::enumerate(action);
  EXPECT_EQ(BigInt(table.size()), burnside_count(action->group(), 3));
  std::uint64_t sum = 0;
  for (const auto& r : table.orbits()) sum += r.size;
  EXPECT_EQ(sum, 6561u);
}

TEST(OrbitTable, UnindexedLookupAgrees) {
  const auto action = full_action(icosahedron());
  const OrbitTable indexed = OrbitTable::enumerate(action);
  OrbitCaps caps;
  caps.index_cap = 16;
  const OrbitTable lean = OrbitTable::enumerate(action, caps);
  EXPECT_TRUE(indexed.has_index());
  EXPECT_FALSE(lean.has_index());
  for (StateCode s = 0; s < 4096; ++s) ASSERT_EQ(lean.orbit_of(s), indexed.orbit_of(s));
}

TEST(OrbitTable, StateCapIsEnforced) {
  OrbitCaps caps;
  caps.state_cap = 1000;
  EXPECT_THROW(OrbitTable::enumerate(full_action(icosahedron()), caps), CapExceeded);
}

TEST(OrbitFiles, CsvAndBinaryRoundTrip) {
  const auto action = full_action(hexahedron());
  const OrbitTable table = OrbitTable::enumerate(action);
  std::stringstream csv;
  write_orbit_csv(csv, table);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "orbit_id,representative_code,size");
  const OrbitTable from_csv = OrbitTable::from_records(action, read_orbit_csv(csv));
  std::stringstream bin;
  write_orbit_binary(bin, table);
  const OrbitTable from_bin = OrbitTable::from_records(action, read_orbit_binary(bin));
  for (std::size_t i = 0; i < table.size(); ++i) {
    EXPECT_EQ(from_csv[i].representative, table[i].representative);
    EXPECT_EQ(from_bin[i].size, table[i].size);
  }
}

TEST(OrbitFiles, CorruptRecordsRejected) {
  const auto action = full_action(hexahedron());
  auto records = OrbitTable::enumerate(action).orbits();
  auto missing = records;
  missing.pop_back();
  EXPECT_THROW(OrbitTable::from_records(action, missing), Error);
  auto wrong = records;
  wrong[3].representative += 1;
  EXPECT_THROW(OrbitTable::from_records(action, wrong), Error);
  std::stringstream bad("orbit_id,representative_code,size\n0,abc,1\n");
  EXPECT_THROW(read_orbit_csv(bad), ParseError);
}

}  // namespace
