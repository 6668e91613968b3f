#include "residua/recurrence.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace residua {
namespace {

Int mod_canon(const Int& v, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Step cap: the pair orbit lives in (Z/m)^2 and the period of a second-order
// recurrence mod m is classically below 6*m^2 (attained shape for m = 2*5^k).
std::uint64_t step_guard(const Int& m) {
  Int g = 6 * m * m;
  if (!g.fits_ulong_p()) return std::uint64_t(1) << 62;
  return g.get_ui();
}

}  // namespace

OrbitStats orbit_stats(const RecurrenceInstance& inst, const Int& m,
                       const std::vector<std::uint64_t>& class_mods) {
  if (m < 1) throw InputError("orbit_stats: m must be >= 1");
  OrbitStats out;
  out.m = m;
  const std::uint64_t guard = step_guard(m);
  Int a = mod_canon(inst.x0, m);
  Int b = mod_canon(inst.x1, m);
  const Int start_a = a, start_b = b;
  std::set<Int> seen;
  do {
    out.period.push_back(a);
    seen.insert(a);
    Int next = mod_canon(inst.a1 * b + a, m);
    a = b;
    b = std::move(next);
    if (out.period.size() > guard)
      throw InternalError("orbit_stats: period exceeded the 6*m^2 bound");
  } while (a != start_a || b != start_b);
  out.tau = out.period.size();
  out.residues.assign(seen.begin(), seen.end());
  out.rho = out.residues.size();
  out.nonzero = !seen.contains(Int(0));
  for (std::uint64_t d : class_mods) {
    if (d == 0) throw InputError("orbit_stats: class modulus must be >= 1");
    // Indices n = r (mod d) sweep the congruence class r mod gcd(d, tau)
    // of period positions, so classes with equal r mod g coincide.
    const std::uint64_t g = std::gcd(d, out.tau);
    std::vector<std::set<Int>> per_class(g);
    for (std::uint64_t j = 0; j < out.tau; ++j)
      per_class[j % g].insert(out.period[j]);
    for (std::uint64_t r = 0; r < d; ++r)
      out.class_rho[{d, r}] = per_class[r % g].size();
  }
  return out;
}

RecurrenceInstance reverse_instance(const RecurrenceInstance& inst,
                                    const Int& m) {
  OrbitStats s = orbit_stats(inst, m);
  RecurrenceInstance rev;
  rev.a1 = -inst.a1;
  // y_n = x_{tau-1-n} satisfies the sign-flipped recurrence and sweeps the
  // same residues; its first two values sit at the tail of the period.
  rev.x0 = s.period[(s.tau - 1) % s.tau];
  rev.x1 = s.period[(2 * s.tau - 2) % s.tau];
  return rev;
}

CrtCombined crt_combine(const RecurrenceInstance& i1, const Int& m1,
                        const RecurrenceInstance& i2, const Int& m2) {
  if (i1.a1 != i2.a1) throw InputError("crt_combine: mismatched a1");
  if (m1 < 1 || m2 < 1) throw InputError("crt_combine: moduli must be >= 1");
  Int g;
  mpz_gcd(g.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
  if (g != 1) throw InputError("crt_combine: moduli must be coprime");

  OrbitStats s2 = orbit_stats(i2, m2);
  if (s2.rho != s2.tau)
    throw InputError("crt_combine: second instance must have rho = tau");

  OrbitStats s1 = orbit_stats(i1, m1);
  const std::uint64_t d = std::gcd(s1.tau, s2.tau);
  OrbitStats s1d = orbit_stats(i1, m1, {d});
  std::uint64_t sum = 0;
  for (std::uint64_t r = 0; r < d; ++r) sum += s1d.class_rho.at({d, r});

  CrtCombined out;
  out.m = m1 * m2;
  out.predicted_rho = (s2.tau / d) * sum;
  out.d = d;
  out.inst.a1 = i1.a1;
  // x = x1 + m1 * ((x2 - x1) * m1^{-1} mod m2), per coordinate.
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t()) == 0)
    throw InternalError("crt_combine: lost invertibility");
  auto combine = [&](const Int& v1, const Int& v2) {
    Int t = mod_canon((mod_canon(v2, m2) - mod_canon(v1, m2)) * inv, m2);
    return mod_canon(v1 + m1 * t, out.m);
  };
  out.inst.x0 = combine(i1.x0, i2.x0);
  out.inst.x1 = combine(i1.x1, i2.x1);
  return out;
}

}  // namespace residua
