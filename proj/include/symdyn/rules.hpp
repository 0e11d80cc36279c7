#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/numeric.hpp"

namespace symdyn {

// A binary local rule x' = f(x_1..x_k, x_{k+1}) that is symmetric in the k
// outer values, so it depends only on the neighbor sum s and the center c.
// The integer code stores f(s, c) at bit 2s + c ("little endian": the rule
// table read top to bottom gives the code's bits from least significant up).
class Rule {
 public:
  static Rule from_code(int k, std::uint64_t code);
  static Rule from_birth_survival(int k, const std::set<int>& birth, const std::set<int>& survival);

  int valency() const { return k_; }
  std::uint64_t code() const { return code_; }
  unsigned next(int sum, unsigned center) const {
    return static_cast<unsigned>((code_ >> (2 * sum + center)) & 1u);
  }

  std::set<int> birth() const;
  std::set<int> survival() const;
  // "B123/S0"; an empty set renders as nothing ("B0123/S").
  std::string birth_survival() const;

  bool operator==(const Rule&) const = default;

 private:
  Rule(int k, std::uint64_t code) : k_(k), code_(code) {}
  int k_;
  std::uint64_t code_;
};

// Largest supported valency: the code must fit 2k + 2 bits in 64.
inline constexpr int kMaxRuleValency = 31;

// Accepts a decimal code ("86") or B/S notation ("B3/S23", "b3/s23").
Rule parse_rule(std::string_view spec, int k);

// f~(x) = 1 - f(1 - x): the same rule after renaming 0 <-> 1.
Rule value_swap_conjugate(const Rule& rule);

// q^(C(k+q-1, q-1) q): symmetric rules over q values.
BigInt count_rules(int k, unsigned q);
// Binary rules up to 0 <-> 1 renaming, by Burnside over {id, swap}:
// (2^(2k+2) + 2^(k+1)) / 2 = 2^(2k+1) + 2^k.
BigInt count_classes(int k);
// One rule per value-swap class, the smaller code of each pair, ascending.
std::vector<Rule> class_representatives(int k);

// Algebraic normal form over F_2 in the center x_{k+1} and the elementary
// symmetric functions s_1..s_k of the outer values. coefficient(d, e) is
// the coefficient of s_d * x_{k+1}^e (s_0 = 1).
class Gf2Polynomial {
 public:
  explicit Gf2Polynomial(const Rule& rule);

  int valency() const { return k_; }
  bool coefficient(int degree, int center_power) const {
    return (bits_ >> (2 * degree + center_power)) & 1u;
  }
  // Evaluates on explicit outer values and center.
  unsigned evaluate(const std::vector<unsigned>& outer, unsigned center) const;
  // "x4(σ2 + σ1) + σ3 + σ2 + σ1 + 1".
  std::string to_string() const;

 private:
  int k_;
  std::uint64_t bits_ = 0;
};

inline constexpr int kMaxPolynomialValency = 12;

std::string rule_to_gf2_polynomial(const Rule& rule);

}  // namespace symdyn
