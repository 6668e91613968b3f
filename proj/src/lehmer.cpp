#include "residua/lehmer.hpp"

#include <algorithm>
#include <cstdlib>

namespace residua {
namespace {

QuadInt qi_pow(const RingParams& ring, QuadInt base, std::uint64_t e) {
  QuadInt acc = QuadInt::from_int(ring, 1);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

// gamma^n - delta^n and gamma^n + delta^n with gamma = alpha,
// delta = alpha - a1 = -beta.
QuadInt gamma_pow_minus_delta_pow(const RingParams& ring, std::uint64_t n) {
  QuadInt g = QuadInt::alpha(ring);
  QuadInt d = QuadInt(ring, Int(-ring.a1), Int(1));
  return qi_pow(ring, g, n) - qi_pow(ring, d, n);
}

QuadInt gamma_pow_plus_delta_pow(const RingParams& ring, std::uint64_t n) {
  QuadInt g = QuadInt::alpha(ring);
  QuadInt d = QuadInt(ring, Int(-ring.a1), Int(1));
  return qi_pow(ring, g, n) + qi_pow(ring, d, n);
}

// Value c of a pure multiple c * sqrt(D) of the surd, where the element is
// given as x + y*alpha = c * (2*alpha - a1).  Throws unless it has exactly
// that shape.
Int sqrt_disc_multiple(const QuadInt& e, const char* who) {
  if (2 * e.unit() != -e.a1() * e.alpha_coeff())
    throw InternalError(std::string(who) + ": element is not c*sqrt(D)");
  Int c = e.alpha_coeff();
  if (mpz_odd_p(c.get_mpz_t()))
    throw InternalError(std::string(who) + ": odd sqrt(D) coordinate");
  return c / 2;
}

std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
  std::vector<std::uint64_t> ds;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    ds.push_back(d);
    if (d != n / d) ds.push_back(n / d);
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

}  // namespace

Int lehmer_term(const RingParams& ring, std::uint64_t n) {
  if (n < 1) throw InputError("lehmer_term: n must be >= 1");
  QuadInt s = gamma_pow_minus_delta_pow(ring, n);
  Int value;
  if (n % 2 == 1) {
    // Divide by gamma - delta = a1: the alpha coordinate must vanish.
    if (s.alpha_coeff() != 0)
      throw InternalError("lehmer_term: odd-index difference not rational");
    Int num = s.unit();
    if (!mpz_divisible_p(num.get_mpz_t(), Int(ring.a1).get_mpz_t()))
      throw InternalError("lehmer_term: non-exact division by a1");
    value = num / ring.a1;
  } else {
    // Divide by gamma^2 - delta^2 = a1 * sqrt(D).
    Int c = sqrt_disc_multiple(s, "lehmer_term");
    if (!mpz_divisible_p(c.get_mpz_t(), Int(ring.a1).get_mpz_t()))
      throw InternalError("lehmer_term: non-exact division by a1");
    value = c / ring.a1;
  }
  if (value < 0) throw InternalError("lehmer_term: negative term");
  return value;
}

Int lehmer_companion(const RingParams& ring, std::uint64_t n) {
  if (n < 1 || n % 2 == 0)
    throw InputError("lehmer_companion: n must be odd and >= 1");
  // gamma^n + delta^n = v_n * (gamma + delta) = v_n * sqrt(D).
  QuadInt s = gamma_pow_plus_delta_pow(ring, n);
  Int v = sqrt_disc_multiple(s, "lehmer_companion");
  if (v < 0) throw InternalError("lehmer_companion: negative value");
  return v;
}

Int cyclotomic_num(const RingParams& ring, std::uint64_t n) {
  if (n < 3) throw InputError("cyclotomic_num: n must be >= 3");
  Int num = 1, den = 1;
  for (std::uint64_t d : divisors_of(n)) {
    int mu = moebius(Int(n / d));
    if (mu == 0) continue;
    Int term = lehmer_term(ring, d);
    if (mu > 0)
      num *= term;
    else
      den *= term;
  }
  if (den == 0 || !mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw InternalError("cyclotomic_num: product is not an integer");
  return num / den;
}

bool is_primitive_divisor(const RingParams& ring, const Int& p,
                          std::uint64_t n) {
  if (n < 1) throw InputError("is_primitive_divisor: n must be >= 1");
  if (!is_probable_prime(p))
    throw InputError("is_primitive_divisor: p must be prime");
  // p | a1^2 * D disqualifies immediately.
  Int ad = Int(ring.a1) * ring.a1 * ring.D;
  if (mpz_divisible_p(ad.get_mpz_t(), p.get_mpz_t())) return false;
  // With p coprime to a1*D:  p | l_k  <=>  (alpha^2)^k = 1 mod p.
  ModQuad a = ModQuad::alpha(ring, p);
  ModQuad g = a * a;
  ModQuad y = g;
  for (std::uint64_t k = 1; k < n; ++k) {
    if (y.is_one()) return false;  // p already divides l_k
    y = y * g;
  }
  return y.is_one();
}

PrimitiveDivisorReport primitive_divisors(const RingParams& ring,
                                          std::uint64_t n,
                                          const FactorBudget& budget) {
  if (n < 3) throw InputError("primitive_divisors: n must be >= 3");
  PrimitiveDivisorReport out;
  out.n = n;
  out.phi_n = cyclotomic_num(ring, n);
  Int absphi = abs(out.phi_n);
  FactoredInt fac = factorize(absphi, budget);
  out.complete = fac.complete;

  const bool small_index = (n <= 4 || n == 6);
  Int pprime;  // greatest prime factor of n/gcd(n, 3); fast path only
  if (!small_index) pprime = greatest_prime_excl3(Int(n), budget);

  for (const auto& fe : fac.factors) {
    bool primitive;
    unsigned exponent = fe.exponent;
    if (small_index) {
      primitive = is_primitive_divisor(ring, fe.prime, n);
      if (primitive) exponent = p_adic_val(lehmer_term(ring, n), fe.prime);
    } else {
      // Factorization of phi_n certifies primitivity except for the
      // residual candidates, which get the definition-based test: the
      // greatest prime factor of n (3 excluded), 2, and also 3 when n = 12.
      bool ambiguous = fe.prime == pprime || fe.prime == 2 ||
                       (n == 12 && fe.prime == 3);
      primitive = ambiguous ? is_primitive_divisor(ring, fe.prime, n) : true;
    }
    if (primitive) out.primitive.push_back({fe.prime, exponent});
  }

  out.residual = absphi;
  for (const auto& fe : out.primitive) {
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), fe.prime.get_mpz_t(), fe.exponent);
    if (!mpz_divisible_p(out.residual.get_mpz_t(), pw.get_mpz_t()))
      throw InternalError("primitive_divisors: exponent mismatch");
    out.residual /= pw;
  }
  return out;
}

HighPrimitiveResult high_primitive_divisor(const RingParams& ring,
                                           std::uint64_t n,
                                           const FactorBudget& budget) {
  PrimitiveDivisorReport report = primitive_divisors(ring, n, budget);
  HighPrimitiveResult out;
  for (const auto& fe : report.primitive) {
    if (fe.prime == 2) continue;
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), fe.prime.get_mpz_t(), fe.exponent);
    if (pw > Int(n)) {
      // Entries arrive sorted, so the last qualifying prime is the largest.
      out.status = HighPrimitiveStatus::found;
      out.p = fe.prime;
      out.exponent = fe.exponent;
    }
  }
  if (out.status != HighPrimitiveStatus::found)
    out.status = report.complete ? HighPrimitiveStatus::none
                                 : HighPrimitiveStatus::unknown;
  return out;
}

bool guarantee_odd_primdiv(long a1, std::uint64_t n) {
  if (a1 == 0) throw InputError("guarantee_odd_primdiv: a1 must be nonzero");
  if (n < 3) throw InputError("guarantee_odd_primdiv: n must be >= 3");
  const long A = std::labs(a1);
  if (A == 1) return n != 3 && n != 6 && n != 10 && n != 12;
  if (A == 3) return n != 3;
  return true;
}

bool guarantee_high_primdiv(long a1, std::uint64_t n) {
  if (a1 == 0) throw InputError("guarantee_high_primdiv: a1 must be nonzero");
  if (n < 3) throw InputError("guarantee_high_primdiv: n must be >= 3");
  const long A = std::labs(a1);
  if (A == 1)
    return n != 3 && n != 4 && n != 6 && n != 8 && n != 10 && n != 12 &&
           n != 14 && n != 18 && n != 24;
  if (A == 2) return n != 4 && n != 6 && n != 12;
  if (A == 3) return n != 3 && n != 6;
  return true;
}

}  // namespace residua
