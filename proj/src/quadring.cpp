#include "residua/quadring.hpp"

#include <cassert>
#include <utility>

namespace residua {
namespace {

Int mod_canon(const Int& v, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int pow_ui(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int invert_or_throw(const Int& a, const Int& m, const char* who) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw InputError(std::string(who) + ": element not invertible");
  return r;
}

void require_odd_prime(const Int& p, const char* who) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()) || !is_probable_prime(p))
    throw InputError(std::string(who) + ": p must be an odd prime");
}

// Square root of a mod odd prime p (Tonelli-Shanks); requires (a|p) != -1.
Int sqrt_mod_prime(const Int& a0, const Int& p) {
  Int a = mod_canon(a0, p);
  if (a == 0) return 0;
  if (legendre(a, p) != 1)
    throw InputError("sqrt_mod_prime: a is not a quadratic residue");
  Int r;
  if (mpz_tstbit(p.get_mpz_t(), 1) == 1) {  // p % 4 == 3
    Int e = (p + 1) / 4;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  // p % 4 == 1: full Tonelli-Shanks.
  Int q = p - 1;
  unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
  Int z = 2;
  while (legendre(z, p) != -1) ++z;
  Int c, t, b, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  unsigned long m = s;
  while (t != 1) {
    Int tt = t;
    unsigned long i = 0;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
      if (i == m) throw InternalError("sqrt_mod_prime: lost the 2-group");
    }
    Int b2;
    mpz_ui_pow_ui(b2.get_mpz_t(), 2, m - i - 1);
    mpz_powm(b.get_mpz_t(), c.get_mpz_t(), b2.get_mpz_t(), p.get_mpz_t());
    r = r * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return r;
}

// Generic multiplicative-order descent from a known group exponent.
// is_one(pow(e)) must be callable; E must factor completely within budget.
template <typename PowFn, typename IsOneFn>
Int order_via_exponent(const Int& E, PowFn&& pow, IsOneFn&& is_one,
                       const FactorBudget& budget) {
  if (!is_one(pow(E)))
    throw InternalError("order: element does not satisfy the group exponent");
  FactoredInt fe = factorize(E, budget);
  if (!fe.complete)
    throw BudgetExceeded("order: group exponent did not factor", 0);
  Int ord = E;
  for (const auto& entry : fe.factors) {
    for (unsigned i = 0; i < entry.exponent; ++i) {
      if (!mpz_divisible_p(ord.get_mpz_t(), entry.prime.get_mpz_t())) break;
      Int t = ord / entry.prime;
      if (!is_one(pow(t))) break;
      ord = std::move(t);
    }
  }
  return ord;
}

Int scalar_order(const Int& g, const Int& modulus, const Int& E,
                 const FactorBudget& budget) {
  return order_via_exponent(
      E,
      [&](const Int& e) {
        Int r;
        mpz_powm(r.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t(),
                 modulus.get_mpz_t());
        return r;
      },
      [](const Int& r) { return r == 1; }, budget);
}

Int modquad_order(const ModQuad& g, const Int& E, const FactorBudget& budget) {
  return order_via_exponent(
      E, [&](const Int& e) { return g.pow(e); },
      [](const ModQuad& r) { return r.is_one(); }, budget);
}

// Unit-group exponent of Z[alpha]/p^v: p^(v-1)*(p-1) when p splits,
// p^(v-1)*(p^2-1) when p is inert.
Int group_exponent(const Int& p, unsigned v, SplitType kind) {
  Int E = pow_ui(p, v - 1);
  if (kind == SplitType::split)
    E *= p - 1;
  else
    E *= p * p - 1;
  return E;
}

}  // namespace

QuadInt QuadInt::operator+(const QuadInt& o) const {
  check_same_ring(o);
  QuadInt r = *this;
  r.x_ += o.x_;
  r.y_ += o.y_;
  return r;
}

QuadInt QuadInt::operator-(const QuadInt& o) const {
  check_same_ring(o);
  QuadInt r = *this;
  r.x_ -= o.x_;
  r.y_ -= o.y_;
  return r;
}

QuadInt QuadInt::operator*(const QuadInt& o) const {
  check_same_ring(o);
  QuadInt r = *this;
  Int yy = y_ * o.y_;
  r.x_ = x_ * o.x_ + yy;
  r.y_ = x_ * o.y_ + y_ * o.x_ + a1_ * yy;
  return r;
}

QuadInt QuadInt::operator-() const {
  QuadInt r = *this;
  r.x_ = -r.x_;
  r.y_ = -r.y_;
  return r;
}

QuadInt QuadInt::conj() const {
  QuadInt r = *this;
  r.x_ = x_ + a1_ * y_;
  r.y_ = -y_;
  return r;
}

Int QuadInt::norm() const { return x_ * x_ + a1_ * x_ * y_ - y_ * y_; }

int QuadInt::sign() const {
  if (y_ == 0) return sgn(x_);
  if (y_ < 0) return -(-*this).sign();
  // y > 0: sign of t + y*sqrt(D) with t = 2x + a1*y, D = a1^2 + 4.
  Int t = 2 * x_ + a1_ * y_;
  if (t >= 0) return 1;
  Int D = Int(a1_) * a1_ + 4;
  return (y_ * y_ * D > t * t) ? 1 : -1;
}

QuadInt QuadInt::divexact(const Int& d) const {
  if (d == 0 || !mpz_divisible_p(x_.get_mpz_t(), d.get_mpz_t()) ||
      !mpz_divisible_p(y_.get_mpz_t(), d.get_mpz_t()))
    throw InternalError("QuadInt::divexact: non-exact division");
  QuadInt r = *this;
  mpz_divexact(r.x_.get_mpz_t(), x_.get_mpz_t(), d.get_mpz_t());
  mpz_divexact(r.y_.get_mpz_t(), y_.get_mpz_t(), d.get_mpz_t());
  return r;
}

QuadInt alpha_pow(const RingParams& ring, long n) {
  // alpha^-1 = alpha - a1 (from alpha^2 - a1*alpha = 1).
  QuadInt base =
      n >= 0 ? QuadInt::alpha(ring) : QuadInt(ring, Int(-ring.a1), Int(1));
  unsigned long e = n >= 0 ? (unsigned long)n : (unsigned long)(-(n + 1)) + 1;
  QuadInt acc = QuadInt::from_int(ring, 1);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

ModQuad::ModQuad(const RingParams& ring, Int modulus, const Int& u,
                 const Int& v)
    : a1_(ring.a1), mod_(std::move(modulus)) {
  if (mod_ < 2) throw InputError("ModQuad: modulus must be >= 2");
  u_ = mod_canon(u, mod_);
  v_ = mod_canon(v, mod_);
}

ModQuad ModQuad::operator+(const ModQuad& o) const {
  check_compatible(o);
  ModQuad r = *this;
  r.u_ = mod_canon(u_ + o.u_, mod_);
  r.v_ = mod_canon(v_ + o.v_, mod_);
  return r;
}

ModQuad ModQuad::operator-(const ModQuad& o) const {
  check_compatible(o);
  ModQuad r = *this;
  r.u_ = mod_canon(u_ - o.u_, mod_);
  r.v_ = mod_canon(v_ - o.v_, mod_);
  return r;
}

ModQuad ModQuad::operator*(const ModQuad& o) const {
  check_compatible(o);
  ModQuad r = *this;
  Int vv = v_ * o.v_;
  r.u_ = mod_canon(u_ * o.u_ + vv, mod_);
  r.v_ = mod_canon(u_ * o.v_ + v_ * o.u_ + a1_ * vv, mod_);
  return r;
}

ModQuad ModQuad::pow(const Int& e) const {
  if (e < 0) throw InputError("ModQuad::pow: exponent must be >= 0");
  ModQuad base = *this;
  ModQuad acc = *this;
  acc.u_ = 1;
  acc.v_ = 0;
  const unsigned long bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return acc;
  for (unsigned long i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = acc * base;
    if (i + 1 < bits) base = base * base;
  }
  return acc;
}

Int ModQuad::norm() const {
  return mod_canon(u_ * u_ + a1_ * u_ * v_ - v_ * v_, mod_);
}

bool ModQuad::invertible() const {
  Int g;
  Int n = norm();
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), mod_.get_mpz_t());
  return g == 1;
}

ModQuad ModQuad::inverse() const {
  // conj(z) / norm(z) with conj(u + v*t) = (u + a1*v) - v*t.
  Int n = u_ * u_ + a1_ * u_ * v_ - v_ * v_;
  Int ninv = invert_or_throw(mod_canon(n, mod_), mod_, "ModQuad::inverse");
  ModQuad r = *this;
  r.u_ = mod_canon((u_ + a1_ * v_) * ninv, mod_);
  r.v_ = mod_canon(-v_ * ninv, mod_);
  return r;
}

SplitType split_type(const RingParams& ring, const Int& p) {
  require_odd_prime(p, "split_type");
  switch (legendre(ring.D, p)) {
    case 1:
      return SplitType::split;
    case -1:
      return SplitType::inert;
    default:
      return SplitType::ramified;
  }
}

Int lift_root(const RingParams& ring, const Int& p, unsigned v) {
  require_odd_prime(p, "lift_root");
  if (v < 1) throw InputError("lift_root: v must be >= 1");
  if (split_type(ring, p) != SplitType::split)
    throw InputError("lift_root: p does not split");
  const Int pv = pow_ui(p, v);
  // Square root of D mod p, lifted by Newton doubling to mod p^v.
  Int s = sqrt_mod_prime(ring.D, p);
  Int m = p;
  while (m < pv) {
    m = m * m;
    if (m > pv) m = pv;
    Int sinv = invert_or_throw(s, m, "lift_root");
    Int half = invert_or_throw(Int(2), m, "lift_root");
    s = mod_canon((s + mod_canon(ring.D, m) * sinv) * half, m);
  }
  Int half = invert_or_throw(Int(2), pv, "lift_root");
  Int r1 = mod_canon((ring.a1 + s) * half, pv);
  Int r2 = mod_canon(Int(ring.a1) - r1, pv);
  for (const Int& r : {r1, r2})
    if (mod_canon(r * r - ring.a1 * r - 1, pv) != 0)
      throw InternalError("lift_root: lifted value is not a root");
  return r1 < r2 ? r1 : r2;
}

IdealDesc describe_ideal(const RingParams& ring, const Int& p, unsigned v) {
  if (v < 1) throw InputError("describe_ideal: v must be >= 1");
  IdealDesc d;
  d.p = p;
  d.v = v;
  d.kind = split_type(ring, p);
  if (d.kind == SplitType::split) d.root = lift_root(ring, p, v);
  return d;
}

Int ord_alpha2(const RingParams& ring, const Int& p, unsigned v,
               const FactorBudget& budget) {
  if (v < 1) throw InputError("ord_alpha2: v must be >= 1");
  SplitType kind = split_type(ring, p);
  if (kind == SplitType::ramified)
    throw InputError("ord_alpha2: p divides the discriminant");
  const Int E = group_exponent(p, v, kind);
  const Int pv = pow_ui(p, v);
  if (kind == SplitType::split) {
    Int r = lift_root(ring, p, v);
    return scalar_order(mod_canon(r * r, pv), pv, E, budget);
  }
  ModQuad a = ModQuad::alpha(ring, pv);
  return modquad_order(a * a, E, budget);
}

OrderTriple ord_alpha_beta(const RingParams& ring, const Int& p, unsigned v,
                           const FactorBudget& budget) {
  if (v < 1) throw InputError("ord_alpha_beta: v must be >= 1");
  SplitType kind = split_type(ring, p);
  if (kind == SplitType::ramified)
    throw InputError("ord_alpha_beta: p divides the discriminant");
  const Int E = group_exponent(p, v, kind);
  const Int pv = pow_ui(p, v);
  OrderTriple out;
  Int o1, o2;
  Int r1;
  if (kind == SplitType::split) {
    r1 = lift_root(ring, p, v);
    Int r2 = mod_canon(Int(ring.a1) - r1, pv);
    o1 = scalar_order(r1, pv, E, budget);
    o2 = scalar_order(r2, pv, E, budget);
  } else {
    ModQuad a = ModQuad::alpha(ring, pv);
    ModQuad b = ModQuad(ring, pv, Int(ring.a1), Int(-1));
    o1 = modquad_order(a, E, budget);
    o2 = modquad_order(b, E, budget);
  }
  Int c1 = mpz_odd_p(o1.get_mpz_t()) ? o1 : o1 / 2;
  Int c2 = mpz_odd_p(o2.get_mpz_t()) ? o2 : o2 / 2;
  if (c1 != c2)
    throw InternalError("ord_alpha_beta: conjugate squares disagree");
  out.c = c1;
  out.a = o1 >= o2 ? o1 : o2;
  out.b = o1 >= o2 ? o2 : o1;
  if (kind == SplitType::split) {
    // Report a root realizing order 2c (both do when c is even).
    Int r2 = mod_canon(Int(ring.a1) - r1, pv);
    out.root_2c = (o1 == 2 * out.c) ? r1 : r2;
  }
  // Structural invariants: lcm(a, b) = 2c and the parity trichotomy.
  Int l;
  mpz_lcm(l.get_mpz_t(), out.a.get_mpz_t(), out.b.get_mpz_t());
  bool ok;
  if (mpz_odd_p(out.c.get_mpz_t()))
    ok = out.a == 2 * out.c && out.b == out.c;
  else
    ok = out.a == 2 * out.c && out.b == 2 * out.c;
  if (!ok || l != 2 * out.c)
    throw InternalError("ord_alpha_beta: order trichotomy violated");
  return out;
}

}  // namespace residua
