#include <algorithm>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "residua/intmath.hpp"

using residua::FactorBudget;
using residua::FactoredInt;
using residua::Int;

namespace {

// Trial-division oracles, deliberately independent of the library code.
int moebius_oracle(unsigned long n) {
  int count = 0;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    ++count;
  }
  if (n > 1) ++count;
  return count % 2 == 0 ? 1 : -1;
}

unsigned long phi_oracle(unsigned long n) {
  unsigned long count = 0;
  for (unsigned long k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++count;
  return count;
}

int legendre_oracle(long a, unsigned long p) {
  long r = a % long(p);
  if (r < 0) r += long(p);
  if (r == 0) return 0;
  for (unsigned long x = 1; x < p; ++x)
    if (x * x % p == static_cast<unsigned long>(r)) return 1;
  return -1;
}

std::vector<unsigned long> primes_upto(unsigned long bound) {
  std::vector<unsigned long> ps;
  for (unsigned long n = 2; n <= bound; ++n) {
    bool prime = true;
    for (unsigned long d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        prime = false;
        break;
      }
    if (prime) ps.push_back(n);
  }
  return ps;
}

}  // namespace

TEST_SUITE("intmath") {

TEST_CASE("factorize on known factorizations") {
  auto f1 = residua::factorize(1);
  CHECK(f1.complete);
  CHECK(f1.factors.empty());
  CHECK(f1.recompose() == 1);

  auto f360 = residua::factorize(360);
  REQUIRE(f360.factors.size() == 3);
  CHECK(f360.factors[0].prime == 2);
  CHECK(f360.factors[0].exponent == 3);
  CHECK(f360.factors[1].prime == 3);
  CHECK(f360.factors[1].exponent == 2);
  CHECK(f360.factors[2].prime == 5);
  CHECK(f360.factors[2].exponent == 1);

  auto fp = residua::factorize(1009);
  REQUIRE(fp.factors.size() == 1);
  CHECK(fp.factors[0].prime == 1009);
  CHECK(fp.factors[0].exponent == 1);

  // 2^64 - 1 = 3 * 5 * 17 * 257 * 641 * 65537 * 6700417
  Int m64 = (Int(1) << 64) - 1;
  auto f64 = residua::factorize(m64);
  CHECK(f64.complete);
  CHECK(f64.recompose() == m64);
  std::vector<long> expect{3, 5, 17, 257, 641, 65537, 6700417};
  REQUIRE(f64.factors.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) {
    CHECK(f64.factors[i].prime == expect[i]);
    CHECK(f64.factors[i].exponent == 1);
  }
}

TEST_CASE("factorize splits a semiprime beyond the trial bound") {
  const Int p("1000003"), q("1000033");
  auto f = residua::factorize(p * q);
  CHECK(f.complete);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].prime == p);
  CHECK(f.factors[1].prime == q);
  CHECK(f.exponent_of(p) == 1);
  CHECK(f.exponent_of(2) == 0);
  CHECK(f.cofactor() == 1);
}

TEST_CASE("factorize handles perfect powers of large primes") {
  const Int p("1000003");
  auto f = residua::factorize(p * p);
  CHECK(f.complete);
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0].prime == p);
  CHECK(f.factors[0].exponent == 2);

  auto g = residua::factorize(Int(1) << 60);
  REQUIRE(g.factors.size() == 1);
  CHECK(g.factors[0].prime == 2);
  CHECK(g.factors[0].exponent == 60);
}

TEST_CASE("factorize recomposition on a mixed value") {
  // 2^5 * 3 * 1000003^2 * 1009
  const Int p("1000003");
  Int n = Int(32) * 3 * p * p * 1009;
  auto f = residua::factorize(n);
  CHECK(f.complete);
  CHECK(f.recompose() == n);
  CHECK(f.exponent_of(p) == 2);
  CHECK(f.exponent_of(2) == 5);
  CHECK(std::is_sorted(f.factors.begin(), f.factors.end(),
                       [](const residua::FactorEntry& a,
                          const residua::FactorEntry& b) {
                         return a.prime < b.prime;
                       }));
}

TEST_CASE("factorize under a starved budget reports incompleteness") {
  FactorBudget tiny;
  tiny.trial_bound = 1000;
  tiny.rho_iterations = 4;
  const Int p("9940681"), q("9742382798081");  // both prime
  auto f = residua::factorize(p * q, tiny);
  CHECK(!f.complete);
  CHECK(f.cofactor() == p * q);
  CHECK(residua::factorize(p * q).complete);  // default budget succeeds
}

TEST_CASE("factorize rejects nonpositive input") {
  CHECK_THROWS_AS(residua::factorize(0), residua::InputError);
  CHECK_THROWS_AS(residua::factorize(-6), residua::InputError);
}

TEST_CASE("probable-prime classification") {
  CHECK(residua::is_probable_prime(2));
  CHECK(residua::is_probable_prime(97));
  CHECK(!residua::is_probable_prime(1));
  CHECK(!residua::is_probable_prime(561));   // Carmichael
  CHECK(!residua::is_probable_prime(1105));  // Carmichael
  Int m89 = (Int(1) << 89) - 1;
  CHECK(residua::is_probable_prime(m89));
  CHECK(!residua::is_probable_prime(m89 - 2));
}

TEST_CASE("moebius matches trial division") {
  for (unsigned long n = 1; n <= 400; ++n)
    CHECK(residua::moebius(n) == moebius_oracle(n));
  CHECK(residua::moebius(Int("1000036000099")) == 1);  // two distinct primes
  CHECK_THROWS_AS(residua::moebius(0), residua::InputError);
}

TEST_CASE("moebius signals an exhausted budget") {
  FactorBudget tiny;
  tiny.trial_bound = 1000;
  tiny.rho_iterations = 4;
  const Int hard = Int("9940681") * Int("9742382798081");
  CHECK_THROWS_AS(residua::moebius(hard, tiny), residua::BudgetExceeded);
}

TEST_CASE("euler_phi matches gcd counting") {
  for (unsigned long n : {1ul, 2ul, 12ul, 36ul, 97ul, 100ul, 210ul, 243ul,
                          360ul, 499ul})
    CHECK(residua::euler_phi(n) == phi_oracle(n));
}

TEST_CASE("legendre matches square enumeration") {
  for (unsigned long p : primes_upto(97)) {
    if (p == 2) continue;
    for (long a = -5; a <= long(p) + 5; ++a)
      CHECK(residua::legendre(a, p) == legendre_oracle(a, p));
  }
  CHECK_THROWS_AS(residua::legendre(3, 2), residua::InputError);
  CHECK_THROWS_AS(residua::legendre(3, 9), residua::InputError);
  CHECK_THROWS_AS(residua::legendre(3, 15), residua::InputError);
}

TEST_CASE("p-adic valuation") {
  CHECK(residua::p_adic_val(96, 2) == 5);
  CHECK(residua::p_adic_val(81, 3) == 4);
  CHECK(residua::p_adic_val(7, 5) == 0);
  CHECK(residua::p_adic_val(-24, 2) == 3);
  CHECK_THROWS_AS(residua::p_adic_val(0, 2), residua::InputError);
  CHECK_THROWS_AS(residua::p_adic_val(8, 1), residua::InputError);
}

TEST_CASE("greatest prime factor after cancelling one 3") {
  CHECK(residua::greatest_prime_excl3(4) == 2);
  CHECK(residua::greatest_prime_excl3(5) == 5);
  CHECK(residua::greatest_prime_excl3(6) == 2);
  CHECK(residua::greatest_prime_excl3(9) == 3);   // 9/3 = 3
  CHECK(residua::greatest_prime_excl3(12) == 2);  // 12/3 = 4
  CHECK(residua::greatest_prime_excl3(18) == 3);  // 18/3 = 6
  CHECK(residua::greatest_prime_excl3(30) == 5);
  CHECK(residua::greatest_prime_excl3(35) == 7);
  CHECK_THROWS_AS(residua::greatest_prime_excl3(3), residua::InputError);
}

}  // TEST_SUITE
