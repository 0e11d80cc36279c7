#include "symdyn/statespace.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

// Byte tables are skipped when they would exceed this many bytes.
constexpr std::size_t kMaxTableBytes = std::size_t{256} << 20;

}  // namespace

StateSpace::StateSpace(int vertices, unsigned q) : n_(vertices), q_(q) {
  if (vertices <= 0) throw Error("state space needs at least one vertex");
  if (q < 2) throw Error("state space needs q >= 2");
  if (big_pow(BigInt(q), static_cast<unsigned>(vertices)) > (BigInt(1) << 64))
    throw CapExceeded("q^n = " + std::to_string(q) + "^" + std::to_string(vertices) +
                      " does not fit in a 64-bit state code");
  place_.resize(n_);
  StateCode p = 1;
  for (int v = n_ - 1; v >= 0; --v) {
    place_[v] = p;
    if (v > 0) p *= q_;
  }
}

BigInt StateSpace::total_states() const { return big_pow(BigInt(q_), static_cast<unsigned>(n_)); }

std::uint64_t StateSpace::total_states_u64() const {
  const BigInt total = total_states();
  if (total > BigInt(std::numeric_limits<std::uint64_t>::max()))
    throw CapExceeded("state space of " + total.str() + " codes does not fit in 64 bits");
  return static_cast<std::uint64_t>(total);
}

unsigned StateSpace::digit(StateCode code, int vertex) const {
  if (q_ == 2) return static_cast<unsigned>((code >> (n_ - 1 - vertex)) & 1u);
  return static_cast<unsigned>((code / place_[vertex]) % q_);
}

StateCode StateSpace::with_digit(StateCode code, int vertex, unsigned value) const {
  const unsigned old = digit(code, vertex);
  return code - old * place_[vertex] + value * place_[vertex];
}

std::vector<unsigned> StateSpace::digits(StateCode code) const {
  std::vector<unsigned> d(n_);
  for (int v = 0; v < n_; ++v) d[v] = digit(code, v);
  return d;
}

StateCode StateSpace::from_digits(const std::vector<unsigned>& digits) const {
  if (static_cast<int>(digits.size()) != n_) throw Error("digit count does not match vertex count");
  StateCode code = 0;
  for (int v = 0; v < n_; ++v) {
    if (digits[v] >= q_) throw Error("digit out of range");
    code += digits[v] * place_[v];
  }
  return code;
}

std::string StateSpace::to_string(StateCode code) const {
  std::string s;
  for (int v = 0; v < n_; ++v) {
    const unsigned d = digit(code, v);
    s += d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10);
  }
  return s;
}

bool StateSpace::contains(StateCode code) const {
  const BigInt total = total_states();
  return BigInt(code) < total;
}

StateCode act(const StateSpace& space, const Perm& g, StateCode code) {
  if (g.degree() != space.vertices())
    throw Error("act: permutation degree " + std::to_string(g.degree()) +
                " does not match state size " + std::to_string(space.vertices()));
  StateCode out = 0;
  for (int y = 0; y < space.vertices(); ++y) {
    const unsigned d = space.digit(code, y);
    if (d != 0) out = space.with_digit(out, g[y], d);
  }
  return out;
}

GroupAction::GroupAction(PermGroup group, StateSpace space)
    : group_(std::move(group)), space_(std::move(space)) {
  if (group_.degree() != space_.vertices())
    throw Error("group degree does not match state space");
  const int n = space_.vertices();
  if (space_.q() != 2) return;
  const int chunks = (n + 7) / 8;
  if (group_.order() * static_cast<std::size_t>(chunks) * 256 * sizeof(StateCode) > kMaxTableBytes)
    return;
  chunks_ = chunks;
  tables_.assign(group_.order() * static_cast<std::size_t>(chunks_) * 256, 0);
  for (std::size_t e = 0; e < group_.order(); ++e) {
    const Perm& g = group_.elements()[e];
    for (int c = 0; c < chunks_; ++c) {
      StateCode* table = &tables_[(e * chunks_ + c) * 256];
      StateCode bit_image[8] = {};
      for (int b = 0; b < 8; ++b) {
        const int pos = 8 * c + b;
        if (pos >= n) break;
        const int vertex = n - 1 - pos;
        bit_image[b] = StateCode{1} << (n - 1 - g[vertex]);
      }
      for (int byte = 1; byte < 256; ++byte) {
        const int low = std::countr_zero(static_cast<unsigned>(byte));
        table[byte] = table[byte & (byte - 1)] | bit_image[low];
      }
    }
  }
}

StateCode GroupAction::apply(std::size_t element, StateCode code) const {
  if (chunks_ == 0) return act(space_, group_.elements()[element], code);
  const StateCode* t = &tables_[element * chunks_ * 256];
  StateCode out = 0;
  for (int c = 0; c < chunks_; ++c, t += 256) out |= t[(code >> (8 * c)) & 0xff];
  return out;
}

std::pair<StateCode, std::size_t> GroupAction::canonical(StateCode code) const {
  StateCode best = code;
  std::size_t which = 0;  // element 0 is the identity
  for (std::size_t e = 1; e < group_.order(); ++e) {
    const StateCode image = apply(e, code);
    if (image < best) {
      best = image;
      which = e;
    }
  }
  return {best, which};
}

namespace {

class Bitmap {
 public:
  explicit Bitmap(std::uint64_t bits) : words_((bits + 63) / 64, 0), bits_(bits) {}
  bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  // First clear bit at or after i, or bits_ if none.
  std::uint64_t next_clear(std::uint64_t i) const {
    while (i < bits_) {
      const std::uint64_t word = ~words_[i >> 6] >> (i & 63);
      if (word != 0) return std::min(bits_, i + std::countr_zero(word));
      i = (i | 63) + 1;
    }
    return bits_;
  }

 private:
  std::vector<std::uint64_t> words_;
  std::uint64_t bits_;
};

}  // namespace

OrbitTable OrbitTable::enumerate(std::shared_ptr<const GroupAction> action, OrbitCaps caps) {
  const BigInt total_big = action->space().total_states();
  if (total_big > caps.state_cap)
    throw CapExceeded("state space of " + total_big.str() + " codes exceeds the enumeration cap of " +
                      std::to_string(caps.state_cap));
  const auto total = static_cast<std::uint64_t>(total_big);
  const bool with_index = total <= caps.index_cap;

  OrbitTable table;
  table.action_ = std::move(action);
  const GroupAction& act = *table.action_;

  Bitmap visited(total);
  std::vector<std::uint32_t> provisional(with_index ? total : 0);
  std::vector<OrbitRecord> records;
  // Codes are scanned upward, so the first unvisited code of an orbit is its
  // minimal representative.
  for (std::uint64_t c = visited.next_clear(0); c < total; c = visited.next_clear(c + 1)) {
    const auto id = static_cast<std::uint32_t>(records.size());
    std::uint64_t size = 0;
    for (std::size_t e = 0; e < act.order(); ++e) {
      const StateCode image = act.apply(e, c);
      if (visited.test(image)) continue;
      visited.set(image);
      if (with_index) provisional[image] = id;
      ++size;
    }
    records.push_back({c, size});
  }
  table.finish(std::move(records), std::move(provisional));
  return table;
}

OrbitTable OrbitTable::from_records(std::shared_ptr<const GroupAction> action,
                                    std::vector<OrbitRecord> records, OrbitCaps caps) {
  const BigInt total_big = action->space().total_states();
  if (total_big > caps.state_cap)
    throw CapExceeded("state space exceeds the enumeration cap");
  const auto total = static_cast<std::uint64_t>(total_big);
  const bool with_index = total <= caps.index_cap;

  OrbitTable table;
  table.action_ = std::move(action);
  const GroupAction& act = *table.action_;

  std::sort(records.begin(), records.end(),
            [](const OrbitRecord& a, const OrbitRecord& b) { return a.representative < b.representative; });
  BigInt covered = 0;
  std::vector<std::uint32_t> provisional(with_index ? total : 0);
  std::vector<StateCode> images;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.representative >= total || (i > 0 && records[i - 1].representative == r.representative))
      throw Error("orbit records: bad or repeated representative " + std::to_string(r.representative));
    images.clear();
    for (std::size_t e = 0; e < act.order(); ++e) images.push_back(act.apply(e, r.representative));
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    if (images.front() != r.representative || images.size() != r.size)
      throw Error("orbit records: representative " + std::to_string(r.representative) +
                  " is not minimal or has the wrong orbit size");
    if (with_index)
      for (StateCode s : images) provisional[s] = static_cast<std::uint32_t>(i);
    covered += r.size;
  }
  if (covered != total_big) throw Error("orbit records do not cover the state space");
  table.finish(std::move(records), std::move(provisional));
  return table;
}

void OrbitTable::finish(std::vector<OrbitRecord> records, std::vector<std::uint32_t> provisional) {
  // `records` arrive in increasing representative order.
  std::vector<std::uint32_t> order(records.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (records[a].size != records[b].size) return records[a].size > records[b].size;
    return records[a].representative < records[b].representative;
  });
  std::vector<std::uint32_t> new_id(records.size());
  orbits_.resize(records.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) {
    new_id[order[i]] = i;
    orbits_[i] = records[order[i]];
  }
  for (auto& id : provisional) id = new_id[id];
  index_ = std::move(provisional);
  by_representative_.resize(records.size());
  for (std::uint32_t old = 0; old < records.size(); ++old)
    by_representative_[old] = {records[old].representative, new_id[old]};
}

std::uint32_t OrbitTable::orbit_of(StateCode code) const {
  if (!index_.empty()) return index_[code];
  const StateCode rep = action_->canonical(code).first;
  const auto it = std::lower_bound(by_representative_.begin(), by_representative_.end(),
                                   std::pair<StateCode, std::uint32_t>{rep, 0});
  if (it == by_representative_.end() || it->first != rep) throw Error("orbit_of: state outside the table");
  return it->second;
}

void write_orbit_csv(std::ostream& out, const OrbitTable& table) {
  out << "orbit_id,representative_code,size\n";
  for (std::size_t i = 0; i < table.size(); ++i)
    out << i << ',' << table[i].representative << ',' << table[i].size << '\n';
}

std::vector<OrbitRecord> read_orbit_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("orbit_id,representative_code,size", 0) != 0)
    throw ParseError(1, "missing orbit CSV header");
  std::vector<OrbitRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::uint64_t id = 0;
    OrbitRecord r{};
    char c1 = 0, c2 = 0;
    if (!(row >> id >> c1 >> r.representative >> c2 >> r.size) || c1 != ',' || c2 != ',')
      throw ParseError(line_no, "malformed orbit row");
    if (id != records.size()) throw ParseError(line_no, "orbit ids must be consecutive");
    records.push_back(r);
  }
  return records;
}

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw Error("truncated orbit dump");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{bytes[i]} << (8 * i);
  return v;
}

}  // namespace

void write_orbit_binary(std::ostream& out, const OrbitTable& table) {
  put_u64(out, table.size());
  for (const auto& r : table.orbits()) {
    put_u64(out, r.representative);
    put_u64(out, r.size);
  }
}

std::vector<OrbitRecord> read_orbit_binary(std::istream& in) {
  const std::uint64_t count = get_u64(in);
  std::vector<OrbitRecord> records;
  records.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    OrbitRecord r{};
    r.representative = get_u64(in);
    r.size = get_u64(in);
    records.push_back(r);
  }
  return records;
}

}  // namespace symdyn
