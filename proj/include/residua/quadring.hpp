#pragma once

#include <optional>

#include "residua/intmath.hpp"

namespace residua {

// The ring Z[alpha] with alpha^2 = a1*alpha + 1.  alpha denotes the larger
// real root (a1 + sqrt(D))/2 of X^2 - a1*X - 1, beta = a1 - alpha the other;
// alpha*beta = -1 and D = a1^2 + 4 is the discriminant (never a square).
struct RingParams {
  long a1 = 0;
  Int D;

  explicit RingParams(long a1_) : a1(a1_), D(Int(a1_) * a1_ + 4) {
    if (a1 == 0) throw InputError("RingParams: a1 must be nonzero");
  }
};

// Element x + y*alpha with exact integer coordinates.
class QuadInt {
 public:
  QuadInt(const RingParams& ring, Int x, Int y)
      : a1_(ring.a1), x_(std::move(x)), y_(std::move(y)) {}

  static QuadInt from_int(const RingParams& ring, Int n) {
    return QuadInt(ring, std::move(n), 0);
  }
  static QuadInt alpha(const RingParams& ring) { return QuadInt(ring, 0, 1); }
  static QuadInt beta(const RingParams& ring) {
    return QuadInt(ring, ring.a1, -1);
  }
  // 2*alpha - a1, the positive square root of D.
  static QuadInt sqrt_disc(const RingParams& ring) {
    return QuadInt(ring, -ring.a1, 2);
  }

  const Int& unit() const { return x_; }
  const Int& alpha_coeff() const { return y_; }
  long a1() const { return a1_; }

  QuadInt operator+(const QuadInt& o) const;
  QuadInt operator-(const QuadInt& o) const;
  QuadInt operator*(const QuadInt& o) const;
  QuadInt operator-() const;
  bool operator==(const QuadInt& o) const = default;

  QuadInt conj() const;  // x + a1*y - y*alpha  (alpha <-> beta)
  Int norm() const;      // x^2 + a1*x*y - y^2  (product with conjugate)

  // Exact sign of x + y*alpha as a real number.
  int sign() const;

  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_rational() const { return y_ == 0; }

  // Divide both coordinates by d; throws InternalError unless exact.
  QuadInt divexact(const Int& d) const;

 private:
  void check_same_ring(const QuadInt& o) const {
    if (a1_ != o.a1_) throw InputError("QuadInt: mixed rings");
  }
  long a1_;
  Int x_, y_;
};

// alpha^n computed exactly; n may be negative (alpha^-1 = -beta).
QuadInt alpha_pow(const RingParams& ring, long n);

// Element u + v*t of (Z/modulus)[t]/(t^2 - a1*t - 1), coordinates kept in
// [0, modulus).  Models alpha modulo a prime power.
class ModQuad {
 public:
  ModQuad(const RingParams& ring, Int modulus, const Int& u, const Int& v);

  static ModQuad alpha(const RingParams& ring, const Int& modulus) {
    return ModQuad(ring, modulus, 0, 1);
  }
  static ModQuad from_int(const RingParams& ring, const Int& modulus,
                          const Int& n) {
    return ModQuad(ring, modulus, n, 0);
  }

  const Int& unit() const { return u_; }
  const Int& alpha_coeff() const { return v_; }
  const Int& modulus() const { return mod_; }

  ModQuad operator+(const ModQuad& o) const;
  ModQuad operator-(const ModQuad& o) const;
  ModQuad operator*(const ModQuad& o) const;
  bool operator==(const ModQuad& o) const = default;

  ModQuad pow(const Int& e) const;  // e >= 0
  Int norm() const;                 // u^2 + a1*u*v - v^2 mod modulus
  bool invertible() const;          // gcd(norm, modulus) == 1
  ModQuad inverse() const;          // throws InputError when not invertible

  bool is_one() const { return u_ == 1 && v_ == 0; }
  bool is_zero() const { return u_ == 0 && v_ == 0; }

 private:
  void check_compatible(const ModQuad& o) const {
    if (a1_ != o.a1_ || mod_ != o.mod_)
      throw InputError("ModQuad: mixed rings or moduli");
  }
  long a1_;
  Int mod_, u_, v_;
};

enum class SplitType { split, inert, ramified };

// Splitting of the odd prime p in Z[alpha], decided by (D|p).
SplitType split_type(const RingParams& ring, const Int& p);

struct IdealDesc {
  Int p;
  unsigned v = 1;
  SplitType kind = SplitType::split;
  // Smaller root of X^2 - a1*X - 1 mod p^v in the split case.
  std::optional<Int> root;
};

IdealDesc describe_ideal(const RingParams& ring, const Int& p, unsigned v);

// Smaller of the two roots of X^2 - a1*X - 1 mod p^v; requires p an odd
// split prime.  The companion root is a1 - root mod p^v.
Int lift_root(const RingParams& ring, const Int& p, unsigned v);

// Multiplicative order of alpha^2 in (Z[alpha]/p^v)^*; p odd, p coprime to D.
Int ord_alpha2(const RingParams& ring, const Int& p, unsigned v,
               const FactorBudget& budget = {});

struct OrderTriple {
  Int a;  // larger of the two root/conjugate orders (always 2c when c even)
  Int b;  // the other order
  Int c;  // order of alpha^2
  // In the split case, a residue root of order 2c (the root behind `a` when
  // a = 2c).  Unset for inert primes.
  std::optional<Int> root_2c;
};

// Orders of the two images of alpha (the two residue roots when split, the
// conjugate pair alpha/beta in ModQuad when inert), together with the order
// of alpha^2.  Invariants: lcm(a, b) = 2c; c odd => {a, b} = {c, 2c};
// c even => a = b = 2c.
OrderTriple ord_alpha_beta(const RingParams& ring, const Int& p, unsigned v,
                           const FactorBudget& budget = {});

}  // namespace residua
