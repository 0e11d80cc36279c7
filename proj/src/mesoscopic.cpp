#include "symdyn/mesoscopic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "symdyn/error.hpp"
#include "symdyn/parallel.hpp"

namespace symdyn {

long double log_big(const BigInt& value) {
  if (value <= 0) throw Error("log of a non-positive integer");
  const std::size_t bits = boost::multiprecision::msb(value) + 1;
  const std::size_t shift = bits > 60 ? bits - 60 : 0;
  const BigInt top = value >> shift;
  return std::log(static_cast<long double>(top.convert_to<std::uint64_t>())) +
         static_cast<long double>(shift) * std::log(2.0L);
}

IsingHamiltonian::IsingHamiltonian(const Lattice& lattice, long long J, long long B)
    : n_(lattice.size()), J_(J), B_(B), edges_(static_cast<int>(lattice.edge_count())),
      upper_masks_(lattice.size()) {
  if (n_ > 64) throw Error("Ising energy needs at most 64 vertices");
  for (int v = 0; v < n_; ++v)
    for (int u : lattice.neighbors(v))
      if (u < v) upper_masks_[n_ - 1 - v] |= StateCode{1} << (n_ - 1 - u);
}

int IsingHamiltonian::magnetization(StateCode state) const { return 2 * std::popcount(state) - n_; }

long long IsingHamiltonian::energy(StateCode state) const {
  int unequal = 0;
  for (int b = 0; b < n_; ++b) {
    const StateCode m = upper_masks_[b];
    unequal += ((state >> b) & 1u) ? std::popcount(~state & m) : std::popcount(state & m);
  }
  const long long bonds = static_cast<long long>(edges_) - 2LL * unequal;
  return -J_ * bonds - B_ * magnetization(state);
}

long long ising_energy(const Lattice& lattice, const StateSpace& space, StateCode state, long long J,
                       long long B) {
  if (space.q() != 2) throw Error("Ising energy needs q = 2");
  if (space.vertices() != lattice.size()) throw Error("state space does not match the lattice");
  return IsingHamiltonian(lattice, J, B).energy(state);
}

namespace {

struct Accumulator {
  std::uint64_t count = 0;
  int min_m = 0;
  int max_m = 0;
  std::uint64_t abs_m_sum = 0;

  void add(std::uint64_t size, int m) {
    if (count == 0) {
      min_m = max_m = m;
    } else {
      min_m = std::min(min_m, m);
      max_m = std::max(max_m, m);
    }
    count += size;
    abs_m_sum += size * static_cast<std::uint64_t>(std::abs(m));
  }
};

}  // namespace

Spectrum density_of_states(const Lattice& lattice, const OrbitTable& table, long long J, long long B,
                           int workers) {
  if (table.space().q() != 2) throw Error("Ising spectrum needs q = 2");
  if (table.space().vertices() != lattice.size()) throw Error("orbit table does not belong to this lattice");
  const IsingHamiltonian h(lattice, J, B);
  const int w = std::max(1, workers);
  std::vector<std::map<long long, Accumulator>> partial(static_cast<std::size_t>(w));
  parallel_chunks(table.size(), w, [&](std::size_t begin, std::size_t end, int worker) {
    auto& hist = partial[static_cast<std::size_t>(worker)];
    for (std::size_t i = begin; i < end; ++i) {
      const StateCode s = table[i].representative;
      hist[h.energy(s)].add(table[i].size, h.magnetization(s));
    }
  });

  std::map<long long, EnergyLevel> merged;
  std::map<long long, BigInt> abs_sum;
  for (const auto& hist : partial)
    for (const auto& [e, acc] : hist) {
      auto [it, inserted] = merged.try_emplace(e);
      EnergyLevel& level = it->second;
      if (inserted) {
        level.energy = e;
        level.min_m = acc.min_m;
        level.max_m = acc.max_m;
      } else {
        level.min_m = std::min(level.min_m, acc.min_m);
        level.max_m = std::max(level.max_m, acc.max_m);
      }
      level.count += acc.count;
      abs_sum[e] += acc.abs_m_sum;
    }

  Spectrum out;
  out.vertices = lattice.size();
  out.J = J;
  out.B = B;
  out.total = table.total_states();
  for (auto& [e, level] : merged) {
    level.mean_abs_m = Rational(abs_sum[e], level.count);
    out.levels.push_back(std::move(level));
  }
  return out;
}

std::vector<EntropyPoint> entropy_curve(const Spectrum& spectrum) {
  std::vector<EntropyPoint> out;
  const auto n = static_cast<long double>(spectrum.vertices);
  for (const auto& level : spectrum.levels)
    out.push_back({static_cast<long double>(level.energy) / n, log_big(level.count) / n});
  return out;
}

std::vector<Intruder> convex_intruders(const Spectrum& spectrum) {
  const auto& L = spectrum.levels;
  std::vector<Intruder> out;
  bool open = false;
  for (std::size_t i = 1; i + 1 < L.size(); ++i) {
    const long long below = L[i].energy - L[i - 1].energy;
    const long long above = L[i + 1].energy - L[i].energy;
    if (below <= 0 || above <= 0) throw Error("energy levels are not strictly increasing");
    bool convex = false;
    long long p = 0, q = 0;
    if (L[i - 1].count > 0 && L[i].count > 0 && L[i + 1].count > 0) {
      const long long g = std::gcd(above, below);
      p = above / g;
      q = below / g;
      const auto pu = static_cast<unsigned>(p), qu = static_cast<unsigned>(q);
      convex = big_pow(L[i].count, pu + qu) < big_pow(L[i - 1].count, pu) * big_pow(L[i + 1].count, qu);
    }
    if (!convex) {
      open = false;
      continue;
    }
    if (!open) out.push_back({L[i - 1].energy, L[i + 1].energy, {}});
    open = true;
    out.back().e_end = L[i + 1].energy;
    out.back().witnesses.push_back({i, L[i - 1].energy, L[i].energy, L[i + 1].energy, p, q});
  }
  return out;
}

namespace {

std::string fixed(long double v, int digits = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << static_cast<double>(v);
  return s.str();
}

std::string decimal(const Rational& r) {
  // Six decimals, exact up to rounding of the last digit.
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt scaled = (num * 1000000 * 2 + den) / (den * 2);
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.str();
  if (digits.size() < 7) digits.insert(0, 7 - digits.size(), '0');
  digits.insert(digits.size() - 6, ".");
  return (negative ? "-" : "") + digits;
}

}  // namespace

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
  out << "E,e,N_E,s,min_M,max_M,mean_abs_M\n";
  const auto curve = entropy_curve(spectrum);
  for (std::size_t i = 0; i < spectrum.levels.size(); ++i) {
    const auto& level = spectrum.levels[i];
    out << level.energy << ',' << fixed(curve[i].e) << ',' << level.count << ',' << fixed(curve[i].s, 9) << ','
        << level.min_m << ',' << level.max_m << ',' << decimal(level.mean_abs_m) << '\n';
  }
}

void write_intruder_csv(std::ostream& out, const std::vector<Intruder>& intruders, int vertices) {
  out << "E_start,E_end,e_start,e_end,witness_count\n";
  const auto n = static_cast<long double>(vertices);
  for (const auto& r : intruders)
    out << r.e_start << ',' << r.e_end << ',' << fixed(r.e_start / n) << ',' << fixed(r.e_end / n) << ','
        << r.witnesses.size() << '\n';
}

void write_entropy_svg(std::ostream& out, const Spectrum& spectrum, const std::vector<Intruder>& intruders) {
  const auto curve = entropy_curve(spectrum);
  if (curve.empty()) throw Error("empty spectrum");
  const double width = 640, panel = 240, margin = 40;
  const double e_min = static_cast<double>(curve.front().e), e_max = static_cast<double>(curve.back().e);
  const double e_span = e_max > e_min ? e_max - e_min : 1.0;
  const double log_total = static_cast<double>(log_big(spectrum.total));

  std::vector<double> s_vals, rho_vals;
  for (const auto& p : curve) {
    s_vals.push_back(static_cast<double>(p.s));
    rho_vals.push_back(std::exp(static_cast<double>(p.s) * spectrum.vertices - log_total));
  }
  const auto x_of = [&](double e) { return margin + (e - e_min) / e_span * (width - 2 * margin); };
  const auto polyline = [&](const std::vector<double>& ys, double top) {
    const double y_max = *std::max_element(ys.begin(), ys.end());
    const double scale = y_max > 0 ? y_max : 1.0;
    std::ostringstream pts;
    for (std::size_t i = 0; i < ys.size(); ++i)
      pts << (i ? " " : "") << x_of(static_cast<double>(curve[i].e)) << ','
          << top + panel - margin / 2 - ys[i] / scale * (panel - margin);
    return pts.str();
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << 2 * panel
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  const double n = spectrum.vertices;
  for (const auto& r : intruders) {
    const double x0 = x_of(r.e_start / n), x1 = x_of(r.e_end / n);
    out << "  <rect x=\"" << x0 << "\" y=\"0\" width=\"" << x1 - x0 << "\" height=\"" << 2 * panel
        << "\" fill=\"#f4c7c3\" opacity=\"0.5\"/>\n";
  }
  const char* labels[] = {"s(e) = ln(N_E)/n", "rho(e) = N_E/N"};
  const std::vector<double>* series[] = {&s_vals, &rho_vals};
  for (int k = 0; k < 2; ++k) {
    const double top = k * panel;
    out << "  <line x1=\"" << margin << "\" y1=\"" << top + panel - margin / 2 << "\" x2=\"" << width - margin
        << "\" y2=\"" << top + panel - margin / 2 << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << margin << "\" y=\"" << top + 16 << "\">" << labels[k] << "</text>\n";
    out << "  <polyline fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"1.5\" points=\""
        << polyline(*series[k], top) << "\"/>\n";
  }
  out << "  <text x=\"" << margin << "\" y=\"" << 2 * panel - 4 << "\">e = " << e_min << "</text>\n";
  out << "  <text x=\"" << width - margin - 60 << "\" y=\"" << 2 * panel - 4 << "\">e = " << e_max
      << "</text>\n";
  out << "</svg>\n";
}

}  // namespace symdyn
