#include "symdyn/rules.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

void check_valency(int k) {
  if (k < 1 || k > kMaxRuleValency)
    throw Error("rule valency must be in 1.." + std::to_string(kMaxRuleValency) + ", got " +
                std::to_string(k));
}

std::uint64_t code_limit_mask(int k) {
  const int bits = 2 * k + 2;
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

std::string render_set(const std::set<int>& values, int k) {
  std::string out;
  for (int v : values) {
    if (k > 9 && !out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

std::set<int> parse_set(std::string_view text, int k, std::string_view spec) {
  std::set<int> out;
  const bool commas = text.find(',') != std::string_view::npos;
  while (!text.empty()) {
    std::string_view tok = text;
    if (commas) {
      const auto comma = text.find(',');
      tok = text.substr(0, comma);
      text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    } else {
      tok = text.substr(0, 1);
      text.remove_prefix(1);
    }
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw Error("bad neighbor count '" + std::string(tok) + "' in rule '" + std::string(spec) + "'");
    if (v < 0 || v > k)
      throw Error("neighbor count " + std::to_string(v) + " out of range 0.." + std::to_string(k) +
                  " in rule '" + std::string(spec) + "'");
    out.insert(v);
  }
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) result = result * (n - r + i) / i;
  return result;
}

}  // namespace

Rule Rule::from_code(int k, std::uint64_t code) {
  check_valency(k);
  if ((code & ~code_limit_mask(k)) != 0)
    throw Error("rule code " + std::to_string(code) + " out of range for valency " + std::to_string(k));
  return Rule(k, code);
}

Rule Rule::from_birth_survival(int k, const std::set<int>& birth, const std::set<int>& survival) {
  check_valency(k);
  std::uint64_t code = 0;
  for (int s : birth) {
    if (s < 0 || s > k) throw Error("birth count " + std::to_string(s) + " out of range");
    code |= std::uint64_t{1} << (2 * s);
  }
  for (int s : survival) {
    if (s < 0 || s > k) throw Error("survival count " + std::to_string(s) + " out of range");
    code |= std::uint64_t{1} << (2 * s + 1);
  }
  return Rule(k, code);
}

std::set<int> Rule::birth() const {
  std::set<int> out;
  for (int s = 0; s <= k_; ++s)
    if (next(s, 0)) out.insert(s);
  return out;
}

std::set<int> Rule::survival() const {
  std::set<int> out;
  for (int s = 0; s <= k_; ++s)
    if (next(s, 1)) out.insert(s);
  return out;
}

std::string Rule::birth_survival() const {
  return "B" + render_set(birth(), k_) + "/S" + render_set(survival(), k_);
}

Rule parse_rule(std::string_view spec, int k) {
  while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.front()))) spec.remove_prefix(1);
  while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.back()))) spec.remove_suffix(1);
  if (spec.empty()) throw Error("empty rule spec");
  if (spec.front() == 'B' || spec.front() == 'b') {
    const auto slash = spec.find('/');
    if (slash == std::string_view::npos || slash + 1 >= spec.size() ||
        (spec[slash + 1] != 'S' && spec[slash + 1] != 's'))
      throw Error("rule '" + std::string(spec) + "' is not in B.../S... notation");
    const auto birth = parse_set(spec.substr(1, slash - 1), k, spec);
    const auto survival = parse_set(spec.substr(slash + 2), k, spec);
    return Rule::from_birth_survival(k, birth, survival);
  }
  std::uint64_t code = 0;
  const auto [ptr, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), code);
  if (ec != std::errc() || ptr != spec.data() + spec.size())
    throw Error("rule '" + std::string(spec) + "' is neither a code nor B/S notation");
  return Rule::from_code(k, code);
}

Rule value_swap_conjugate(const Rule& rule) {
  const int k = rule.valency();
  std::uint64_t code = 0;
  for (int s = 0; s <= k; ++s)
    for (unsigned c = 0; c < 2; ++c)
      if (1u - rule.next(k - s, 1u - c)) code |= std::uint64_t{1} << (2 * s + c);
  return Rule::from_code(k, code);
}

BigInt count_rules(int k, unsigned q) {
  if (k < 1 || q < 2) throw Error("count_rules: need k >= 1 and q >= 2");
  // Multisets of k outer values from q symbols, times q center values.
  const std::uint64_t inputs = binomial(static_cast<std::uint64_t>(k) + q - 1, q - 1) * q;
  return big_pow(BigInt(q), static_cast<unsigned>(inputs));
}

BigInt count_classes(int k) {
  check_valency(k);
  // Identity fixes every rule. The swap pairs input (s, c) with (k-s, 1-c),
  // never with itself, so a swap-invariant rule is fixed by its values on
  // k + 1 pairs.
  const BigInt fixed_by_identity = BigInt(1) << (2 * k + 2);
  const BigInt fixed_by_swap = BigInt(1) << (k + 1);
  return (fixed_by_identity + fixed_by_swap) / 2;
}

std::vector<Rule> class_representatives(int k) {
  check_valency(k);
  if (k > 12) throw Error("class_representatives: valency " + std::to_string(k) + " too large to list");
  const std::uint64_t count = std::uint64_t{1} << (2 * k + 2);
  std::vector<Rule> reps;
  for (std::uint64_t code = 0; code < count; ++code) {
    const Rule r = Rule::from_code(k, code);
    if (code <= value_swap_conjugate(r).code()) reps.push_back(r);
  }
  return reps;
}

Gf2Polynomial::Gf2Polynomial(const Rule& rule) : k_(rule.valency()) {
  if (k_ > kMaxPolynomialValency)
    throw Error("GF(2) form supports valency up to " + std::to_string(kMaxPolynomialValency));
  // Symmetric extension to k + 1 variables: bits 0..k-1 outer, bit k center.
  const std::uint32_t size = 1u << (k_ + 1);
  const std::uint32_t outer_mask = (1u << k_) - 1;
  std::vector<std::uint8_t> anf(size);
  for (std::uint32_t m = 0; m < size; ++m)
    anf[m] = static_cast<std::uint8_t>(rule.next(std::popcount(m & outer_mask), (m >> k_) & 1u));
  // Zhegalkin (Moebius) transform.
  for (int i = 0; i <= k_; ++i)
    for (std::uint32_t m = 0; m < size; ++m)
      if (m & (1u << i)) anf[m] ^= anf[m ^ (1u << i)];
  // Symmetry forces equal coefficients on all monomials of the same outer
  // degree, which then sum to the elementary symmetric function.
  std::vector<int> seen(2 * (k_ + 1), -1);
  for (std::uint32_t m = 0; m < size; ++m) {
    const int slot = 2 * std::popcount(m & outer_mask) + static_cast<int>((m >> k_) & 1u);
    if (seen[slot] >= 0 && seen[slot] != anf[m]) throw Error("GF(2) form: rule is not symmetric");
    seen[slot] = anf[m];
  }
  for (int slot = 0; slot < 2 * (k_ + 1); ++slot)
    if (seen[slot] == 1) bits_ |= std::uint64_t{1} << slot;
}

unsigned Gf2Polynomial::evaluate(const std::vector<unsigned>& outer, unsigned center) const {
  if (static_cast<int>(outer.size()) != k_) throw Error("GF(2) form: wrong number of outer values");
  int ones = 0;
  for (unsigned x : outer) ones += (x & 1u);
  unsigned value = 0;
  for (int d = 0; d <= k_; ++d) {
    // sigma_d of a 0/1 vector with `ones` ones is C(ones, d) mod 2.
    const unsigned sigma = (d <= ones) ? static_cast<unsigned>(binomial(ones, d) & 1u) : 0u;
    for (unsigned e = 0; e < 2; ++e)
      if (coefficient(d, static_cast<int>(e))) value ^= sigma & (e == 0 ? 1u : (center & 1u));
  }
  return value;
}

std::string Gf2Polynomial::to_string() const {
  auto names = [&](int power) {
    std::vector<std::string> out;
    for (int d = k_; d >= 0; --d)
      if (coefficient(d, power)) out.push_back(d == 0 ? "1" : "σ" + std::to_string(d));
    return out;
  };
  auto join = [](const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : " + ") + p;
    return out;
  };
  const std::string x = "x" + std::to_string(k_ + 1);
  std::vector<std::string> terms;
  const auto with_center = names(1);
  if (with_center.size() == 1 && with_center[0] == "1") terms.push_back(x);
  else if (!with_center.empty()) terms.push_back(x + "(" + join(with_center) + ")");
  for (auto& t : names(0)) terms.push_back(std::move(t));
  return terms.empty() ? "0" : join(terms);
}

std::string rule_to_gf2_polynomial(const Rule& rule) { return Gf2Polynomial(rule).to_string(); }

}  // namespace symdyn
