#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "symdyn/lattice.hpp"
#include "symdyn/numeric.hpp"
#include "symdyn/statespace.hpp"

namespace symdyn {

// Ising Hamiltonian H = -J sum_{edges} s_i s_j - B sum_i s_i with spins
// 0 -> -1, 1 -> +1. Binary states on at most 64 vertices.
class IsingHamiltonian {
 public:
  IsingHamiltonian(const Lattice& lattice, long long J = 1, long long B = 0);

  long long energy(StateCode state) const;
  // M = sum of spins.
  int magnetization(StateCode state) const;

  int vertices() const { return n_; }
  long long J() const { return J_; }
  long long B() const { return B_; }

 private:
  int n_;
  long long J_;
  long long B_;
  int edges_;
  std::vector<StateCode> upper_masks_;  // per bit, neighbors at higher bits
};

// Throws unless space.q() == 2.
long long ising_energy(const Lattice& lattice, const StateSpace& space, StateCode state,
                       long long J = 1, long long B = 0);

struct EnergyLevel {
  long long energy = 0;
  BigInt count;
  int min_m = 0;
  int max_m = 0;
  Rational mean_abs_m;
};

struct Spectrum {
  int vertices = 0;
  long long J = 1;
  long long B = 0;
  std::vector<EnergyLevel> levels;  // ascending energy
  BigInt total;
};

// N_E by summing orbit sizes; the Hamiltonian is constant on orbits of any
// subgroup of Aut. Bit-identical for every worker count.
Spectrum density_of_states(const Lattice& lattice, const OrbitTable& table, long long J = 1,
                           long long B = 0, int workers = 1);

struct EntropyPoint {
  long double e;  // E / n
  long double s;  // ln(N_E) / n
};

std::vector<EntropyPoint> entropy_curve(const Spectrum& spectrum);

// Center level i with N_i^(p+q) < N_{i-1}^p N_{i+1}^q, where
// p/q = (E_{i+1} - E_i) / (E_i - E_{i-1}) in lowest terms.
struct IntruderWitness {
  std::size_t level;
  long long e_prev;
  long long e_center;
  long long e_next;
  long long p;
  long long q;
};

struct Intruder {
  long long e_start;
  long long e_end;
  std::vector<IntruderWitness> witnesses;
};

// Runs of consecutive convex centers, each merged into [E_{i-1}, E_{j+1}].
std::vector<Intruder> convex_intruders(const Spectrum& spectrum);

// E,e,N_E,s,min_M,max_M,mean_abs_M
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);
// E_start,E_end,e_start,e_end,witness_count
void write_intruder_csv(std::ostream& out, const std::vector<Intruder>& intruders, int vertices);
// Two stacked panels: s(e) and rho(e) = N_E / q^n.
void write_entropy_svg(std::ostream& out, const Spectrum& spectrum,
                       const std::vector<Intruder>& intruders);

}  // namespace symdyn
