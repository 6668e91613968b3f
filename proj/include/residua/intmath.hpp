#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "residua/errors.hpp"

namespace residua {

using Int = mpz_class;

// Effort cap for the factoring pipeline.  Trial division always runs up to
// trial_bound; the Brent rho stage gives up after rho_iterations curve steps
// (shared across all recursive splits of one factorize() call).  seed fixes
// the rho parameter schedule, so results are reproducible.
struct FactorBudget {
  std::uint64_t rho_iterations = 4'000'000;
  std::uint32_t trial_bound = 1'000'000;
  int mr_rounds = 40;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

struct FactorEntry {
  Int prime;
  unsigned exponent = 0;
};

// Factorization with an explicit completeness flag.  factors is sorted by
// prime, exponents >= 1.  When complete, recompose() == value.  When not,
// the listed part still divides value exactly and the missing cofactor is
// composite with no prime factor below the trial bound.
struct FactoredInt {
  Int value;
  std::vector<FactorEntry> factors;
  bool complete = true;

  Int recompose() const;
  Int cofactor() const;  // value / product of listed prime powers
  unsigned exponent_of(const Int& p) const;
};

// n >= 1 required.  Deterministic for a fixed budget.
FactoredInt factorize(const Int& n, const FactorBudget& budget = {});

// Probabilistic primality via GMP (trial division + Miller-Rabin rounds).
bool is_probable_prime(const Int& n, int rounds = 40);

// Moebius function; 0 on any square factor, else (-1)^(#prime factors).
int moebius(const Int& n, const FactorBudget& budget = {});

Int euler_phi(const Int& n, const FactorBudget& budget = {});

// Legendre symbol (a|p) in {-1, 0, 1}; requires p an odd prime.
int legendre(const Int& a, const Int& p);

// Exponent of the prime p in n; requires n != 0, p >= 2.
unsigned p_adic_val(const Int& n, const Int& p);

// Greatest prime factor of n / gcd(n, 3); requires n >= 4 (which makes the
// quotient > 1, so a greatest prime factor always exists).
Int greatest_prime_excl3(const Int& n, const FactorBudget& budget = {});

}  // namespace residua
