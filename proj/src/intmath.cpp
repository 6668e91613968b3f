#include "residua/intmath.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace residua {
namespace {

constexpr std::uint32_t kSieveLimit = 1'000'000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kSieveLimit + 1, false);
    std::vector<std::uint32_t> ps;
    for (std::uint32_t i = 2; i <= kSieveLimit; ++i) {
      if (composite[i]) continue;
      ps.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= kSieveLimit; j += i)
        composite[j] = true;
    }
    return ps;
  }();
  return primes;
}

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

bool take_step(std::uint64_t& remaining) {
  if (remaining == 0) return false;
  --remaining;
  return true;
}

// One Brent cycle walk on x -> x^2 + c mod n starting from x0.  Returns a
// nontrivial factor, or 0 when the budget ran out / the run degenerated.
Int brent_once(const Int& n, unsigned long c, unsigned long x0,
               std::uint64_t& remaining) {
  Int y(x0), x, ys, q(1), g(1), diff;
  std::uint64_t r = 1;
  const std::uint64_t batch = 128;
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) {
      if (!take_step(remaining)) return 0;
      y = (y * y + c) % n;
    }
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t lim = std::min(batch, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        if (!take_step(remaining)) return 0;
        y = (y * y + c) % n;
        diff = x - y;
        q = q * diff % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += lim;
    }
    r *= 2;
  }
  if (g == n) {
    // The whole batch collapsed; retrace one step at a time.
    g = 1;
    while (g == 1) {
      if (!take_step(remaining)) return 0;
      ys = (ys * ys + c) % n;
      diff = x - ys;
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
  }
  if (g == n) return 0;  // exact collision; caller retries with a new curve
  return g;
}

Int brent_factor(const Int& n, std::uint64_t& remaining, SplitMix64& rng) {
  while (remaining > 0) {
    const unsigned long c = 1 + (rng.next() & 0xffffff);
    const unsigned long x0 = 2 + (rng.next() & 0xffffff);
    Int g = brent_once(n, c, x0, remaining);
    if (g > 1 && g < n) return g;
  }
  return 0;
}

// m has no factor below the trial bound.  Splits it into probable primes,
// accumulating exponents; clears complete on budget exhaustion.
void resolve(Int m, unsigned multiplicity, std::map<Int, unsigned>& acc,
             bool& complete, std::uint64_t& remaining, SplitMix64& rng,
             int mr_rounds) {
  std::vector<std::pair<Int, unsigned>> work{{std::move(m), multiplicity}};
  while (!work.empty()) {
    auto [v, mult] = std::move(work.back());
    work.pop_back();
    if (is_probable_prime(v, mr_rounds)) {
      acc[v] += mult;
      continue;
    }
    if (mpz_perfect_power_p(v.get_mpz_t())) {
      Int root;
      for (unsigned long k = 2;; ++k) {
        if (mpz_root(root.get_mpz_t(), v.get_mpz_t(), k) != 0) {
          work.emplace_back(root, mult * unsigned(k));
          break;
        }
      }
      continue;
    }
    Int f = brent_factor(v, remaining, rng);
    if (f == 0) {
      complete = false;  // composite cofactor dropped
      continue;
    }
    work.emplace_back(v / f, mult);
    work.emplace_back(std::move(f), mult);
  }
}

}  // namespace

Int FactoredInt::recompose() const {
  Int r = 1;
  for (const auto& fe : factors) {
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), fe.prime.get_mpz_t(), fe.exponent);
    r *= pw;
  }
  return r;
}

Int FactoredInt::cofactor() const { return value / recompose(); }

unsigned FactoredInt::exponent_of(const Int& p) const {
  for (const auto& fe : factors)
    if (fe.prime == p) return fe.exponent;
  return 0;
}

bool is_probable_prime(const Int& n, int rounds) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), rounds) > 0;
}

FactoredInt factorize(const Int& n, const FactorBudget& budget) {
  if (n < 1) throw InputError("factorize: n must be >= 1");
  FactoredInt out;
  out.value = n;
  std::map<Int, unsigned> acc;
  Int m = n;
  const std::uint32_t bound = std::min(budget.trial_bound, kSieveLimit);
  for (std::uint32_t p : small_primes()) {
    if (p > bound) break;
    if (mpz_cmp_ui(m.get_mpz_t(), (unsigned long)p * p) < 0) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned e = 0;
      do {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
      acc[Int(p)] += e;
    }
  }
  if (m > 1) {
    // Anything below bound^2 that survived trial division is prime.
    Int bsq = Int(bound) * bound;
    if (m < bsq) {
      acc[m] += 1;
    } else {
      SplitMix64 rng{budget.seed};
      std::uint64_t remaining = budget.rho_iterations;
      resolve(std::move(m), 1, acc, out.complete, remaining, rng,
              budget.mr_rounds);
    }
  }
  out.factors.reserve(acc.size());
  for (auto& [p, e] : acc) out.factors.push_back({p, e});
  return out;
}

int moebius(const Int& n, const FactorBudget& budget) {
  if (n < 1) throw InputError("moebius: n must be >= 1");
  if (n == 1) return 1;
  FactoredInt f = factorize(n, budget);
  if (!f.complete) throw BudgetExceeded("moebius: factorization incomplete", 0);
  int sign = 1;
  for (const auto& fe : f.factors) {
    if (fe.exponent >= 2) return 0;
    sign = -sign;
  }
  return sign;
}

Int euler_phi(const Int& n, const FactorBudget& budget) {
  if (n < 1) throw InputError("euler_phi: n must be >= 1");
  FactoredInt f = factorize(n, budget);
  if (!f.complete)
    throw BudgetExceeded("euler_phi: factorization incomplete", 0);
  Int phi = 1;
  for (const auto& fe : f.factors) {
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), fe.prime.get_mpz_t(), fe.exponent - 1);
    phi *= pw * (fe.prime - 1);
  }
  return phi;
}

int legendre(const Int& a, const Int& p) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()) || !is_probable_prime(p))
    throw InputError("legendre: p must be an odd prime");
  Int e = (p - 1) / 2, r;
  Int base = a % p;
  if (base < 0) base += p;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  if (r == 0) return 0;
  if (r == 1) return 1;
  if (r == p - 1) return -1;
  throw InternalError("legendre: Euler criterion gave a non-root");
}

unsigned p_adic_val(const Int& n, const Int& p) {
  if (n == 0) throw InputError("p_adic_val: n must be nonzero");
  if (p < 2) throw InputError("p_adic_val: p must be >= 2");
  Int reduced;
  return unsigned(
      mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

Int greatest_prime_excl3(const Int& n, const FactorBudget& budget) {
  if (n < 4) throw InputError("greatest_prime_excl3: n must be >= 4");
  Int m = mpz_divisible_ui_p(n.get_mpz_t(), 3) ? n / 3 : n;
  FactoredInt f = factorize(m, budget);
  if (!f.complete)
    throw BudgetExceeded("greatest_prime_excl3: factorization incomplete", 0);
  return f.factors.back().prime;
}

}  // namespace residua
