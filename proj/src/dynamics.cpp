#include "symdyn/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "symdyn/error.hpp"
#include "symdyn/mesoscopic.hpp"
#include "symdyn/parallel.hpp"

namespace symdyn {

Stepper::Stepper(const Lattice& lattice, const Rule& rule)
    : n_(lattice.size()), rule_code_(rule.code()), neighbor_masks_(lattice.size()) {
  if (rule.valency() != lattice.valency())
    throw Error("rule valency " + std::to_string(rule.valency()) + " does not match lattice valency " +
                std::to_string(lattice.valency()));
  if (n_ > 64) throw Error("stepping needs at most 64 vertices, lattice has " + std::to_string(n_));
  for (int v = 0; v < n_; ++v) {
    StateCode mask = 0;
    for (int u : lattice.neighbors(v)) mask |= StateCode{1} << (n_ - 1 - u);
    neighbor_masks_[n_ - 1 - v] = mask;
  }
}

StateCode Stepper::operator()(StateCode state) const {
  StateCode out = 0;
  for (int b = 0; b < n_; ++b) {
    const int sum = std::popcount(state & neighbor_masks_[b]);
    const unsigned center = static_cast<unsigned>((state >> b) & 1u);
    out |= ((rule_code_ >> (2 * sum + center)) & 1u) << b;
  }
  return out;
}

StateCode step(const Lattice& lattice, const Rule& rule, StateCode state) {
  return Stepper(lattice, rule)(state);
}

BigInt Portrait::state_cycle_count() const {
  BigInt total = 0;
  for (const auto& c : cycles_) total += c.state_cycles;
  return total;
}

BigInt Portrait::spaceship_state_cycle_count() const {
  BigInt total = 0;
  for (const auto& c : cycles_)
    if (c.spaceship) total += c.state_cycles;
  return total;
}

std::size_t Portrait::spaceship_cycle_count() const {
  return static_cast<std::size_t>(
      std::count_if(cycles_.begin(), cycles_.end(), [](const PortraitCycle& c) { return c.spaceship; }));
}

namespace {

void check_binary(const OrbitTable& table) {
  if (table.space().q() != 2) throw Error("dynamics supports binary states only");
}

// Follows the state from the representative of the cycle's first orbit
// until it recurs exactly, recording orbit ids on the way.
void resolve_state_cycle(PortraitCycle& cycle, const Stepper& stepper, const OrbitTable& table) {
  const GroupAction& action = table.action();
  const StateCode start = table[cycle.orbits.front()].representative;
  const std::uint64_t limit = cycle.orbit_period * action.order();
  StateCode s = start;
  StateCode after_orbit_period = start;
  std::uint64_t t = 0;
  do {
    cycle.trace.push_back(cycle.orbits[t % cycle.orbit_period]);
    s = stepper(s);
    ++t;
    if (t == cycle.orbit_period) after_orbit_period = s;
    if (t > limit) throw Error("state period exceeds orbit period times group order");
  } while (s != start);
  cycle.state_period = t;
  cycle.spaceship = cycle.state_period > cycle.orbit_period;
  for (std::size_t e = 0; e < action.order(); ++e)
    if (action.apply(e, start) == after_orbit_period) {
      cycle.shift = action.group().elements()[e];
      break;
    }
}

}  // namespace

Portrait build_portrait(const Lattice& lattice, const OrbitTable& table, const Rule& rule, int workers) {
  check_binary(table);
  if (lattice.size() != table.space().vertices())
    throw Error("orbit table does not belong to this lattice");
  const Stepper stepper(lattice, rule);
  const std::size_t n = table.size();

  Portrait p(rule);
  p.successor_.resize(n);
  parallel_chunks(n, workers, [&](std::size_t begin, std::size_t end, int) {
    for (std::size_t i = begin; i < end; ++i)
      p.successor_[i] = table.orbit_of(stepper(table[i].representative));
  });

  // Cycles by pointer chasing with three colors.
  constexpr std::uint8_t fresh = 0, on_path = 1, done = 2;
  std::vector<std::uint8_t> color(n, fresh);
  p.cycle_on_.assign(n, Portrait::kNone);
  std::vector<std::uint32_t> path;
  std::vector<std::vector<std::uint32_t>> found;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (color[i] != fresh) continue;
    path.clear();
    std::uint32_t v = i;
    while (color[v] == fresh) {
      color[v] = on_path;
      path.push_back(v);
      v = p.successor_[v];
    }
    if (color[v] == on_path) {
      const auto from = std::find(path.begin(), path.end(), v);
      std::vector<std::uint32_t> cyc(from, path.end());
      std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
      found.push_back(std::move(cyc));
    }
    for (std::uint32_t u : path) color[u] = done;
  }
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  p.cycles_.resize(found.size());
  for (std::uint32_t c = 0; c < found.size(); ++c) {
    for (std::uint32_t o : found[c]) p.cycle_on_[o] = c;
    p.cycles_[c].orbit_period = found[c].size();
    p.cycles_[c].orbits = std::move(found[c]);
    p.cycles_[c].isolated = true;
  }

  p.basin_of_.assign(n, Portrait::kNone);
  std::vector<bool> has_pred(n, false);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t j = p.successor_[i];
    has_pred[j] = true;
    if (p.cycle_on_[j] != Portrait::kNone && p.cycle_on_[i] != p.cycle_on_[j])
      p.cycles_[p.cycle_on_[j]].isolated = false;
    if (p.cycle_on_[i] != Portrait::kNone) p.basin_of_[i] = p.cycle_on_[i];
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!has_pred[i]) p.eden_.push_back(i);
    if (p.basin_of_[i] != Portrait::kNone) continue;
    path.clear();
    std::uint32_t v = i;
    while (p.basin_of_[v] == Portrait::kNone) {
      path.push_back(v);
      v = p.successor_[v];
    }
    for (std::uint32_t u : path) p.basin_of_[u] = p.basin_of_[v];
  }

  std::vector<std::uint64_t> basin(p.cycles_.size(), 0);
  for (std::uint32_t i = 0; i < n; ++i) basin[p.basin_of_[i]] += table[i].size;
  const BigInt total = table.total_states();
  for (std::size_t c = 0; c < p.cycles_.size(); ++c) {
    auto& cycle = p.cycles_[c];
    resolve_state_cycle(cycle, stepper, table);
    std::uint64_t states_on_cycle = 0;
    for (std::uint32_t o : cycle.orbits) states_on_cycle += table[o].size;
    cycle.state_cycles = BigInt(states_on_cycle / cycle.state_period);
    cycle.basin_size = BigInt(basin[c]);
    cycle.weight = Rational(cycle.basin_size, total);
  }
  return p;
}

std::vector<std::uint32_t> gardens_of_eden(const Portrait& portrait) { return portrait.eden(); }

bool is_reversible(const Portrait& portrait, const OrbitTable& table) {
  std::vector<bool> hit(portrait.size(), false);
  for (std::uint32_t i = 0; i < portrait.size(); ++i) {
    const std::uint32_t j = portrait.successor(i);
    if (hit[j] || table[i].size != table[j].size) return false;
    hit[j] = true;
  }
  return true;
}

bool is_reversible(const Lattice& lattice, const OrbitTable& table, const Rule& rule) {
  check_binary(table);
  const Stepper stepper(lattice, rule);
  std::vector<bool> hit(table.size(), false);
  for (std::uint32_t i = 0; i < table.size(); ++i) {
    const std::uint32_t j = table.orbit_of(stepper(table[i].representative));
    if (hit[j] || table[i].size != table[j].size) return false;
    hit[j] = true;
  }
  return true;
}

std::string Property::name() const {
  const auto with_length = [&](const char* base) {
    return length == 0 ? std::string(base) : std::string(base) + "(" + std::to_string(length) + ")";
  };
  switch (kind) {
    case Kind::reversible: return "reversible";
    case Kind::has_isolated_cycle: return with_length("has_isolated_cycle");
    case Kind::has_limit_cycle: return with_length("has_limit_cycle");
    case Kind::has_spaceship: return "has_spaceship";
    case Kind::has_eden: return "has_eden";
    case Kind::conserves:
      return conserved == Conserved::magnetization ? "conserves(magnetization)" : "conserves(energy)";
  }
  return {};
}

Property parse_property(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), '-', '_');
  std::string arg;
  if (const auto open = s.find('('); open != std::string::npos) {
    if (s.back() != ')') throw Error("unknown property '" + std::string(text) + "'");
    arg = s.substr(open + 1, s.size() - open - 2);
    s.resize(open);
  }
  Property p;
  auto parse_length = [&] {
    if (arg.empty()) return;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), p.length);
    if (ec != std::errc() || ptr != arg.data() + arg.size())
      throw Error("bad cycle length in property '" + std::string(text) + "'");
  };
  if (s == "reversible" && arg.empty()) {
    p.kind = Property::Kind::reversible;
  } else if (s == "has_isolated_cycle") {
    p.kind = Property::Kind::has_isolated_cycle;
    parse_length();
  } else if (s == "has_limit_cycle") {
    p.kind = Property::Kind::has_limit_cycle;
    parse_length();
  } else if (s == "has_spaceship" && arg.empty()) {
    p.kind = Property::Kind::has_spaceship;
  } else if (s == "has_eden" && arg.empty()) {
    p.kind = Property::Kind::has_eden;
  } else if (s == "conserves" && (arg == "magnetization" || arg == "energy")) {
    p.kind = Property::Kind::conserves;
    p.conserved = arg == "energy" ? Conserved::energy : Conserved::magnetization;
  } else {
    throw Error("unknown property '" + std::string(text) + "'");
  }
  return p;
}

bool evaluate_property(const Property& property, const Lattice& lattice, const OrbitTable& table,
                       const Portrait& portrait) {
  const auto any_cycle = [&](bool isolated) {
    return std::any_of(portrait.cycles().begin(), portrait.cycles().end(), [&](const PortraitCycle& c) {
      return c.isolated == isolated && (property.length == 0 || c.state_period == property.length);
    });
  };
  switch (property.kind) {
    case Property::Kind::reversible: return is_reversible(portrait, table);
    case Property::Kind::has_isolated_cycle: return any_cycle(true);
    case Property::Kind::has_limit_cycle: return any_cycle(false);
    case Property::Kind::has_spaceship: return portrait.spaceship_cycle_count() > 0;
    case Property::Kind::has_eden: return !portrait.eden().empty();
    case Property::Kind::conserves: {
      // Both functions are group invariant, so representatives suffice.
      const IsingHamiltonian h(lattice);
      const Stepper stepper(lattice, portrait.rule());
      for (std::uint32_t i = 0; i < table.size(); ++i) {
        const StateCode s = table[i].representative;
        const StateCode t = stepper(s);
        const bool same = property.conserved == Conserved::magnetization
                              ? std::popcount(s) == std::popcount(t)
                              : h.energy(s) == h.energy(t);
        if (!same) return false;
      }
      return true;
    }
  }
  return false;
}

std::vector<ScanRow> scan_rules(const Lattice& lattice, const OrbitTable& table, std::vector<Rule> rules,
                                const std::vector<Property>& properties, int workers) {
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) { return a.code() < b.code(); });
  const std::size_t per_rule = properties.size();
  std::vector<ScanRow> rows(rules.size() * per_rule);
  parallel_chunks(rules.size(), workers, [&](std::size_t begin, std::size_t end, int) {
    for (std::size_t r = begin; r < end; ++r) {
      const Portrait portrait = build_portrait(lattice, table, rules[r]);
      for (std::size_t k = 0; k < per_rule; ++k)
        rows[r * per_rule + k] = {rules[r].code(), properties[k].name(),
                                  evaluate_property(properties[k], lattice, table, portrait)};
    }
  });
  return rows;
}

TrajectoryResult trajectory_analysis(const Lattice& lattice, const GroupAction& action, const Rule& rule,
                                     StateCode start, TrajectoryOptions options) {
  if (action.space().q() != 2) throw Error("dynamics supports binary states only");
  if (lattice.size() != action.space().vertices()) throw Error("group does not act on this lattice");
  if (options.max_steps < 1) throw Error("trajectory needs max_steps >= 1");
  if (!action.space().contains(start)) throw Error("initial state out of range");
  const Stepper stepper(lattice, rule);

  std::unordered_map<StateCode, std::uint64_t> first_seen;  // minimal image -> time
  std::vector<StateCode> states;
  StateCode s = start;
  for (std::uint64_t t = 0;; ++t) {
    const StateCode key = action.canonical(s).first;
    if (const auto it = first_seen.find(key); it != first_seen.end()) {
      TrajectoryResult r;
      r.transient = it->second;
      r.orbit_period = t - it->second;
      r.cycle_start = states[r.transient];
      for (std::size_t e = 0; e < action.order(); ++e)
        if (action.apply(e, r.cycle_start) == s) {
          r.shift = action.group().elements()[e];
          break;
        }
      const std::uint64_t limit = r.orbit_period * action.order();
      StateCode x = r.cycle_start;
      do {
        x = stepper(x);
        ++r.state_period;
        if (r.state_period > limit) throw Error("state period exceeds orbit period times group order");
      } while (x != r.cycle_start);
      r.spaceship = r.state_period > r.orbit_period;
      return r;
    }
    if (t >= options.max_steps)
      throw BudgetExhausted("no orbit recurrence within " + std::to_string(options.max_steps) + " steps");
    if (first_seen.size() >= options.max_stored)
      throw CapExceeded("trajectory stored more than " + std::to_string(options.max_stored) + " states");
    first_seen.emplace(key, t);
    states.push_back(s);
    s = stepper(s);
  }
}

void write_portrait_dot(std::ostream& out, const Portrait& portrait, const OrbitTable& table) {
  out << "digraph portrait {\n";
  out << "  label=\"rule " << portrait.rule().code() << " (" << portrait.rule().birth_survival() << ")\";\n";
  out << "  node [shape=circle];\n";
  for (std::uint32_t i = 0; i < portrait.size(); ++i) {
    out << "  " << i << " [label=\"" << table[i].size << "\"";
    const std::uint32_t c = portrait.cycle_on(i);
    if (c != Portrait::kNone) {
      const auto& cycle = portrait.cycles()[c];
      out << ", cycle=" << c << ", spaceship=" << (cycle.spaceship ? "true" : "false")
          << ", isolated=" << (cycle.isolated ? "true" : "false");
      out << ", style=" << (cycle.spaceship ? "\"bold,dashed\"" : "bold");
    }
    out << "];\n";
  }
  for (std::uint32_t i = 0; i < portrait.size(); ++i)
    out << "  " << i << " -> " << portrait.successor(i) << ";\n";
  out << "}\n";
}

void write_portrait_csv(std::ostream& out, const Portrait& portrait, const OrbitTable& table) {
  out << "orbit_id,successor_id,size,cycle_id,is_spaceship,basin_of\n";
  for (std::uint32_t i = 0; i < portrait.size(); ++i) {
    const std::uint32_t c = portrait.cycle_on(i);
    out << i << ',' << portrait.successor(i) << ',' << table[i].size << ',';
    if (c != Portrait::kNone) out << c;
    out << ',' << (c != Portrait::kNone && portrait.cycles()[c].spaceship ? "true" : "false") << ','
        << portrait.basin_of(i) << '\n';
  }
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  out << "rule_code,property,value\n";
  for (const auto& r : rows) out << r.rule_code << ',' << r.property << ',' << (r.value ? "true" : "false") << '\n';
}

}  // namespace symdyn
