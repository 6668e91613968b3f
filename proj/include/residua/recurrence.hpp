#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "residua/intmath.hpp"

namespace residua {

// x_n = a1 * x_{n-1} + x_{n-2} started from (x0, x1).  a1 = 0 is allowed
// here (the sequence just alternates), unlike in the ring layer.
struct RecurrenceInstance {
  long a1 = 0;
  Int x0, x1;
};

// Exact orbit data of an instance mod m.  The orbit is always purely
// periodic because the step map (a, b) -> (b, a1*b + a) is invertible mod m.
struct OrbitStats {
  Int m;
  std::uint64_t tau = 0;     // period length
  std::vector<Int> period;   // x_0 .. x_{tau-1} reduced mod m
  std::vector<Int> residues; // distinct values, sorted ascending
  std::uint64_t rho = 0;     // residues.size()
  bool nonzero = false;      // no residue equals 0
  // For each requested modulus d: rho restricted to indices n = r (mod d),
  // keyed by (d, r) with 0 <= r < d.
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> class_rho;
};

// Simulates one full period (at most 6*m^2 steps, which the period provably
// never exceeds; running past it raises InternalError).
OrbitStats orbit_stats(const RecurrenceInstance& inst, const Int& m,
                       const std::vector<std::uint64_t>& class_mods = {});

// The time-reversed companion: y_n = x_{tau-1-n} satisfies the recurrence
// with -a1, giving an instance with identical residue set and period.
RecurrenceInstance reverse_instance(const RecurrenceInstance& inst,
                                    const Int& m);

struct CrtCombined {
  RecurrenceInstance inst;
  Int m;                            // m1 * m2
  std::uint64_t predicted_rho = 0;  // count implied by the component data
  std::uint64_t d = 1;              // gcd of the component periods
};

// Chinese-remainder combination of two instances with the same a1 over
// coprime moduli.  Requires the second component to visit tau2 distinct
// residues (rho2 = tau2); predicted_rho is
//   (tau2 / d) * sum_r rho(x1-instance; m1, r, d)   with d = gcd(tau1, tau2),
// and equals the true residue count of the combined instance mod m1*m2.
CrtCombined crt_combine(const RecurrenceInstance& i1, const Int& m1,
                        const RecurrenceInstance& i2, const Int& m2);

}  // namespace residua
