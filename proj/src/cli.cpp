#include "symdyn/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "symdyn/dynamics.hpp"
#include "symdyn/error.hpp"
#include "symdyn/mesoscopic.hpp"

namespace fs = std::filesystem;

namespace symdyn {

PermGroup build_group(const Lattice& lattice, GroupMode mode, std::size_t cap) {
  if (mode == GroupMode::full) return automorphisms(lattice, cap);
  if (!lattice.name().starts_with("square("))
    throw Error("--group translations is only defined for square lattices");
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(lattice.size()))));
  PermGroup group = square_translations(side);
  for (const auto& g : group.generators())
    for (int v = 0; v < lattice.size(); ++v)
      for (int u : lattice.neighbors(v))
        if (!lattice.adjacent(g[v], g[u]))
          throw Error("translations are not symmetries of " + lattice.name());
  return group;
}

std::vector<Rule> parse_rule_list(const std::vector<std::string>& specs, int k) {
  std::vector<Rule> rules;
  for (const auto& raw : specs) {
    std::vector<std::string> tokens;
    // B/S specs may contain commas themselves (valency above 9).
    if (!raw.empty() && (raw[0] == 'B' || raw[0] == 'b')) {
      tokens.push_back(raw);
    } else {
      std::string token;
      for (char c : raw) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
          if (!token.empty()) tokens.push_back(std::move(token));
          token.clear();
        } else {
          token += c;
        }
      }
      if (!token.empty()) tokens.push_back(std::move(token));
    }
    for (const auto& t : tokens) {
      if (t == "all136" || t == "reps") {
        const auto reps = class_representatives(k);
        rules.insert(rules.end(), reps.begin(), reps.end());
      } else if (t == "all") {
        if (k > 12) throw Error("'all' rules: valency too large to list");
        for (std::uint64_t c = 0; c < (std::uint64_t{1} << (2 * k + 2)); ++c) rules.push_back(Rule::from_code(k, c));
      } else {
        rules.push_back(parse_rule(t, k));
      }
    }
  }
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) { return a.code() < b.code(); });
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  return rules;
}

StateCode glider_state(const Lattice& lattice) {
  if (!lattice.name().starts_with("square(") || lattice.valency() != 8)
    throw Error("the glider pattern needs a square Moore lattice");
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(lattice.size()))));
  if (side < 5) throw Error("the glider pattern needs side >= 5");
  const int cells[5][2] = {{1, 0}, {2, 1}, {0, 2}, {1, 2}, {2, 2}};
  StateCode s = 0;
  for (const auto& c : cells) {
    const int v = (c[1] + 1) * side + (c[0] + 1);
    s |= StateCode{1} << (lattice.size() - 1 - v);
  }
  return s;
}

StateCode parse_state(std::string_view text, const Lattice& lattice) {
  const int n = lattice.size();
  if (n > 64) throw Error("states need at most 64 vertices");
  if (text == "glider") return glider_state(lattice);
  if (text == "zeros") return 0;
  if (static_cast<int>(text.size()) == n &&
      std::all_of(text.begin(), text.end(), [](char c) { return c == '0' || c == '1'; })) {
    StateCode s = 0;
    for (char c : text) s = (s << 1) | static_cast<StateCode>(c - '0');
    return s;
  }
  StateCode s = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), s);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error("state '" + std::string(text) + "' is not a pattern name, a " + std::to_string(n) +
                "-digit bit string or a code");
  if (n < 64 && s >> n) throw Error("state code " + std::string(text) + " out of range");
  return s;
}

namespace {

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string cache_key(const Lattice& lattice, unsigned q, GroupMode mode) {
  const std::string doc = serialize(lattice) + "q=" + std::to_string(q) +
                          (mode == GroupMode::full ? "\ngroup=full\n" : "\ngroup=translations\n");
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << fnv1a(doc);
  return s.str();
}

}  // namespace

OrbitTable load_or_enumerate(const Lattice& lattice, std::shared_ptr<const GroupAction> action, GroupMode mode,
                             const std::string& cache_dir, OrbitCaps caps) {
  if (cache_dir.empty()) return OrbitTable::enumerate(std::move(action), caps);
  const std::string key = cache_key(lattice, action->space().q(), mode);
  const fs::path bin = fs::path(cache_dir) / (key + ".orbits.bin");
  if (fs::exists(bin)) {
    std::ifstream in(bin, std::ios::binary);
    return OrbitTable::from_records(std::move(action), read_orbit_binary(in), caps);
  }
  OrbitTable table = OrbitTable::enumerate(std::move(action), caps);
  fs::create_directories(cache_dir);
  {
    std::ofstream out(fs::path(cache_dir) / (key + ".orbits.csv"));
    write_orbit_csv(out, table);
  }
  std::ofstream out(bin, std::ios::binary);
  write_orbit_binary(out, table);
  return table;
}

namespace {

struct Config {
  std::string lattice;
  std::string lattice_file;
  std::vector<std::string> rules;
  std::string out_dir;
  int workers = 0;
  std::uint64_t state_cap = OrbitCaps{}.state_cap;
  std::size_t group_cap = kDefaultGroupCap;
  std::string format;
  std::string group = "full";
  std::string cache_dir;
  // scan
  bool reversible = false;
  bool has_spaceship = false;
  bool has_eden = false;
  std::vector<std::uint64_t> isolated_lengths;
  std::vector<std::uint64_t> limit_lengths;
  std::vector<std::string> conserves;
  std::vector<std::string> properties;
  // trajectory
  std::string state;
  std::uint64_t steps = TrajectoryOptions{}.max_steps;
  std::size_t max_stored = TrajectoryOptions{}.max_stored;
  // ising
  long long J = 1;
  long long B = 0;
};

int worker_count(const Config& c) {
  if (c.workers > 0) return c.workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

Lattice load_lattice(const Config& c) {
  if (!c.lattice_file.empty()) {
    if (!c.lattice.empty()) throw Error("give either a lattice name or --lattice-file, not both");
    std::ifstream in(c.lattice_file);
    if (!in) throw Error("cannot open lattice file '" + c.lattice_file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_lattice(buf.str());
  }
  if (c.lattice.empty()) throw Error("no lattice given (name or --lattice-file)");
  return make_named(c.lattice);
}

GroupMode group_mode(const Config& c) { return c.group == "translations" ? GroupMode::translations : GroupMode::full; }

struct Context {
  Lattice lattice;
  GroupMode mode;
  std::shared_ptr<const GroupAction> action;
};

Context prepare(const Config& c) {
  Lattice lattice = load_lattice(c);
  const GroupMode mode = group_mode(c);
  PermGroup group = build_group(lattice, mode, c.group_cap);
  auto action = std::make_shared<const GroupAction>(std::move(group), StateSpace(lattice.size(), 2));
  return {std::move(lattice), mode, std::move(action)};
}

OrbitTable enumerate_table(const Config& c, const Context& ctx) {
  OrbitCaps caps;
  caps.state_cap = c.state_cap;
  if (ctx.action->space().total_states() > caps.state_cap)
    throw CapExceeded(ctx.lattice.name() + ": " + to_string(ctx.action->space().total_states()) +
                      " states exceed --state-cap; use the trajectory command for single runs");
  return load_or_enumerate(ctx.lattice, ctx.action, ctx.mode, c.cache_dir, caps);
}

std::ofstream open_output(const Config& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  std::ofstream out(fs::path(c.out_dir) / name);
  if (!out) throw Error("cannot write '" + (fs::path(c.out_dir) / name).string() + "'");
  return out;
}

void cmd_lattice_info(const Config& c, std::ostream& out) {
  const Context ctx = prepare(c);
  const Lattice& lat = ctx.lattice;
  const PermGroup& g = ctx.action->group();
  const BigInt states = ctx.action->space().total_states();
  const BigInt burnside = burnside_count(g, 2);
  std::string enumerated = "skipped (state space above cap)";
  if (states <= c.state_cap) {
    const OrbitTable table = enumerate_table(c, ctx);
    enumerated = std::to_string(table.size());
    if (BigInt(table.size()) != burnside) throw Error("enumerated orbit count disagrees with Burnside count");
  }
  if (c.format == "csv") {
    out << "lattice,n,k,edges,group_order,transitive,states,orbits\n";
    out << lat.name() << ',' << lat.size() << ',' << lat.valency() << ',' << lat.edge_count() << ',' << g.order()
        << ',' << (is_transitive(g) ? "true" : "false") << ',' << states << ',' << burnside << '\n';
    return;
  }
  out << "lattice: " << lat.name() << '\n'
      << "vertices: " << lat.size() << '\n'
      << "valency: " << lat.valency() << '\n'
      << "edges: " << lat.edge_count() << '\n'
      << "group: " << c.group << '\n'
      << "group_order: " << g.order() << '\n'
      << "generators: " << g.generators().size() << '\n'
      << "vertex_transitive: " << (is_transitive(g) ? "true" : "false") << '\n'
      << "states: " << states << '\n'
      << "orbits_burnside: " << burnside << '\n'
      << "orbits_enumerated: " << enumerated << '\n';
}

void cmd_orbits(const Config& c, std::ostream& out) {
  const Context ctx = prepare(c);
  const OrbitTable table = enumerate_table(c, ctx);
  if (c.out_dir.empty()) {
    write_orbit_csv(out, table);
    return;
  }
  {
    auto f = open_output(c, "orbits.csv");
    write_orbit_csv(f, table);
  }
  auto f = open_output(c, "orbits.bin");
  write_orbit_binary(f, table);
  out << "orbits: " << table.size() << '\n';
}

void cmd_portrait(const Config& c, std::ostream& out) {
  const Context ctx = prepare(c);
  const auto rules = parse_rule_list(c.rules, ctx.lattice.valency());
  if (rules.empty()) throw Error("portrait needs at least one rule (--rules)");
  const OrbitTable table = enumerate_table(c, ctx);
  const int workers = worker_count(c);
  out << "rule_code,rule,orbits,orbit_cycles,cycles,spaceships,isolated,eden,max_basin_weight\n";
  for (const Rule& rule : rules) {
    const Portrait p = build_portrait(ctx.lattice, table, rule, workers);
    Rational max_weight = 0;
    std::size_t isolated = 0;
    for (const auto& cycle : p.cycles()) {
      max_weight = std::max(max_weight, cycle.weight);
      if (cycle.isolated) ++isolated;
    }
    out << rule.code() << ',' << rule.birth_survival() << ',' << p.size() << ',' << p.cycles().size() << ','
        << p.state_cycle_count() << ',' << p.spaceship_state_cycle_count() << ',' << isolated << ','
        << p.eden().size() << ',' << to_string(max_weight) << '\n';
    if (c.out_dir.empty()) continue;
    const std::string stem = "portrait_" + std::to_string(rule.code());
    if (c.format.empty() || c.format == "dot") {
      auto f = open_output(c, stem + ".dot");
      write_portrait_dot(f, p, table);
    }
    if (c.format.empty() || c.format == "csv") {
      auto f = open_output(c, stem + ".csv");
      write_portrait_csv(f, p, table);
    }
  }
}

void cmd_scan(const Config& c, std::ostream& out) {
  const Context ctx = prepare(c);
  std::vector<Property> props;
  if (c.reversible) props.push_back(parse_property("reversible"));
  for (auto L : c.isolated_lengths) props.push_back(parse_property("has_isolated_cycle(" + std::to_string(L) + ")"));
  for (auto L : c.limit_lengths) props.push_back(parse_property("has_limit_cycle(" + std::to_string(L) + ")"));
  if (c.has_spaceship) props.push_back(parse_property("has_spaceship"));
  if (c.has_eden) props.push_back(parse_property("has_eden"));
  for (const auto& f : c.conserves) props.push_back(parse_property("conserves(" + f + ")"));
  for (const auto& p : c.properties) props.push_back(parse_property(p));
  if (props.empty()) throw Error("scan needs at least one property");
  const auto rules = parse_rule_list(c.rules, ctx.lattice.valency());
  const OrbitTable table = enumerate_table(c, ctx);
  const auto rows = scan_rules(ctx.lattice, table, rules, props, worker_count(c));
  if (c.out_dir.empty()) {
    write_scan_csv(out, rows);
    return;
  }
  auto f = open_output(c, "scan.csv");
  write_scan_csv(f, rows);
  for (const auto& p : props) {
    out << p.name() << ':';
    for (const auto& r : rows)
      if (r.value && r.property == p.name()) out << ' ' << r.rule_code;
    out << '\n';
  }
}

void cmd_trajectory(const Config& c, std::ostream& out) {
  const Context ctx = prepare(c);
  const auto rules = parse_rule_list(c.rules, ctx.lattice.valency());
  if (rules.size() != 1) throw Error("trajectory needs exactly one rule");
  if (c.state.empty()) throw Error("trajectory needs an initial --state");
  const StateCode s0 = parse_state(c.state, ctx.lattice);
  const TrajectoryResult r =
      trajectory_analysis(ctx.lattice, *ctx.action, rules[0], s0, {c.steps, c.max_stored});
  out << "lattice: " << ctx.lattice.name() << '\n'
      << "group: " << c.group << " (order " << ctx.action->order() << ")\n"
      << "rule: " << rules[0].code() << " (" << rules[0].birth_survival() << ")\n"
      << "initial_state: " << ctx.action->space().to_string(s0) << '\n'
      << "transient: " << r.transient << '\n'
      << "orbit_period: " << r.orbit_period << '\n'
      << "state_period: " << r.state_period << '\n'
      << "spaceship: " << (r.spaceship ? "true" : "false") << '\n'
      << "shift: " << r.shift.cycle_notation() << '\n';
}

void cmd_ising(const Config& c, std::ostream& out) {
  const Context ctx = prepare(c);
  const OrbitTable table = enumerate_table(c, ctx);
  const Spectrum spectrum = density_of_states(ctx.lattice, table, c.J, c.B, worker_count(c));
  const auto intruders = convex_intruders(spectrum);
  out << "lattice: " << ctx.lattice.name() << '\n'
      << "levels: " << spectrum.levels.size() << '\n'
      << "E_range: " << spectrum.levels.front().energy << ' ' << spectrum.levels.back().energy << '\n'
      << "total: " << spectrum.total << '\n'
      << "intruders: " << intruders.size() << '\n';
  write_intruder_csv(out, intruders, spectrum.vertices);
  if (c.out_dir.empty()) return;
  if (c.format.empty() || c.format == "csv") {
    auto f = open_output(c, "spectrum.csv");
    write_spectrum_csv(f, spectrum);
    auto g = open_output(c, "intruders.csv");
    write_intruder_csv(g, intruders, spectrum.vertices);
  }
  if (c.format.empty() || c.format == "svg") {
    auto f = open_output(c, "entropy.svg");
    write_entropy_svg(f, spectrum, intruders);
  }
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("lattice,--lattice", c.lattice, "Named lattice, e.g. dodecahedron or square(5,moore,torus)");
  sub->add_option("--lattice-file", c.lattice_file, "Adjacency document");
  sub->add_option("--out", c.out_dir, "Output directory");
  sub->add_option("--workers", c.workers, "Worker threads (default: hardware concurrency)")->check(CLI::NonNegativeNumber);
  sub->add_option("--state-cap", c.state_cap, "Largest state space to enumerate")->check(CLI::PositiveNumber);
  sub->add_option("--group-cap", c.group_cap, "Largest group to close")->check(CLI::PositiveNumber);
  sub->add_option("--group", c.group, "Symmetry group")->check(CLI::IsMember({"full", "translations"}));
  sub->add_option("--cache", c.cache_dir, "Directory for cached orbit tables");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry-reduced analysis of discrete dynamical systems on lattices"};
  app.require_subcommand(1);
  Config c;

  auto* info = app.add_subcommand("lattice-info", "Lattice, group and orbit counts");
  add_common(info, c);
  info->add_option("--format", c.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

  auto* orbits = app.add_subcommand("orbits", "Enumerate orbits of the state space");
  add_common(orbits, c);

  auto* portrait = app.add_subcommand("portrait", "Phase portraits modulo the group");
  add_common(portrait, c);
  portrait->add_option("--rules", c.rules, "Rule codes, B/S specs, all136 or all")->required();
  portrait->add_option("--format", c.format, "Only write this format")->check(CLI::IsMember({"csv", "dot"}));

  auto* scan = app.add_subcommand("scan", "Test rules for properties");
  add_common(scan, c);
  scan->add_option("--rules", c.rules, "Rule codes, B/S specs, all136 or all")->required();
  scan->add_flag("--reversible", c.reversible);
  scan->add_option("--has-isolated-cycle", c.isolated_lengths, "State period (0 = any)");
  scan->add_option("--has-limit-cycle", c.limit_lengths, "State period (0 = any)");
  scan->add_flag("--has-spaceship", c.has_spaceship);
  scan->add_flag("--has-eden", c.has_eden);
  scan->add_option("--conserves", c.conserves)->check(CLI::IsMember({"magnetization", "energy"}));
  scan->add_option("--property", c.properties, "Property spec, e.g. has_isolated_cycle(6)");

  auto* traj = app.add_subcommand("trajectory", "Follow one trajectory up to symmetry");
  add_common(traj, c);
  traj->add_option("--rules,--rule", c.rules, "One rule")->required();
  traj->add_option("--state", c.state, "glider, zeros, a bit string or a code")->required();
  traj->add_option("--steps", c.steps, "Step budget")->check(CLI::PositiveNumber);
  traj->add_option("--max-stored", c.max_stored, "Cap on stored states")->check(CLI::PositiveNumber);

  auto* ising = app.add_subcommand("ising", "Exact Ising density of states and convex intruders");
  add_common(ising, c);
  ising->add_option("--J", c.J, "Coupling");
  ising->add_option("--B", c.B, "Field");
  ising->add_option("--format", c.format, "Only write this format")->check(CLI::IsMember({"csv", "svg"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (info->parsed()) cmd_lattice_info(c, out);
    else if (orbits->parsed()) cmd_orbits(c, out);
    else if (portrait->parsed()) cmd_portrait(c, out);
    else if (scan->parsed()) cmd_scan(c, out);
    else if (traj->parsed()) cmd_trajectory(c, out);
    else if (ising->parsed()) cmd_ising(c, out);
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace symdyn
