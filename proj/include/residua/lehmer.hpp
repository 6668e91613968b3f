#pragma once

#include <cstdint>
#include <vector>

#include "residua/quadring.hpp"

namespace residua {

// Lehmer sequence attached to gamma = alpha, delta = -beta = alpha - a1
// (so gamma*delta = 1, gamma - delta = a1, (gamma + delta)^2 = D):
//   l_n = (gamma^n - delta^n) / (gamma - delta)        for n odd,
//   l_n = (gamma^n - delta^n) / (gamma^2 - delta^2)    for n even.
// Always a nonnegative integer; l_1 = l_2 = 1.
Int lehmer_term(const RingParams& ring, std::uint64_t n);

// Companion value v_n = (gamma^n + delta^n) / (gamma + delta) for odd n;
// satisfies D*v_n^2 - a1^2*l_n^2 = 4 for every odd n >= 1.
Int lehmer_companion(const RingParams& ring, std::uint64_t n);

// phi_n = prod_{d | n} l_d^{mu(n/d)}, an integer for n >= 3; collects the
// primitive part of l_n.
Int cyclotomic_num(const RingParams& ring, std::uint64_t n);

// p is a primitive divisor of l_n when p | l_n and p divides neither
// a1^2 * D nor any earlier term l_1, ..., l_{n-1}.  Requires p prime.
bool is_primitive_divisor(const RingParams& ring, const Int& p,
                          std::uint64_t n);

struct PrimitiveDivisorReport {
  std::uint64_t n = 0;
  Int phi_n;
  // Primitive prime divisors p with exponent nu_p(l_n), sorted by p.
  std::vector<FactorEntry> primitive;
  // |phi_n| divided by the found primitive prime powers.
  Int residual;
  // True when the factorization of phi_n completed within budget, so the
  // primitive list is exhaustive.
  bool complete = true;
};

PrimitiveDivisorReport primitive_divisors(const RingParams& ring,
                                          std::uint64_t n,
                                          const FactorBudget& budget = {});

enum class HighPrimitiveStatus { found, none, unknown };

// A high primitive divisor is an odd primitive divisor p with p^nu_p(l_n)
// exceeding n.  `found` reports the largest one seen; `none` is only
// declared from a complete factorization; `unknown` means the search was
// inconclusive within budget.
struct HighPrimitiveResult {
  HighPrimitiveStatus status = HighPrimitiveStatus::unknown;
  Int p;
  unsigned exponent = 0;
};

HighPrimitiveResult high_primitive_divisor(const RingParams& ring,
                                           std::uint64_t n,
                                           const FactorBudget& budget = {});

// Unconditional existence guarantees for n >= 3, keyed on |a1| and the
// known finite exception lists.
bool guarantee_odd_primdiv(long a1, std::uint64_t n);
bool guarantee_high_primdiv(long a1, std::uint64_t n);

}  // namespace residua
