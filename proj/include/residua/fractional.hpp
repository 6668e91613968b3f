#pragma once

#include <cstdint>
#include <vector>

#include "residua/constructor.hpp"
#include "residua/quadring.hpp"
#include "residua/recurrence.hpp"

namespace residua {

// Writing x_n = c1*alpha^n + c2*beta^n and xi = c1/m, the fractional parts
// {xi * alpha^n} = {x_n/m - (c2/m)*beta^n} approach (x_n mod m)/m because
// |beta| < 1.  A certificate whose orbit hits exactly k distinct nonzero
// residues therefore yields a xi whose fractional orbit has exactly the k
// limit points r_i/m; this module builds xi exactly and certifies the limit
// set with rational interval bounds instead of floating point.

// Element of Q(alpha) in lowest terms: num/den with den >= 1 and no common
// factor among den and the two coordinates of num.
struct QuadRational {
  QuadInt num;
  Int den;

  static QuadRational make(QuadInt num, Int den);

  int sign() const { return num.sign(); }
  bool operator==(const QuadRational& o) const = default;
};

// Exact data extracted from a certificate: xi, the companion coefficient c2,
// and a rational envelope tail_coeff * tail_ratio^n >= |c2/m| * |beta|^n
// bounding the distance from {xi*alpha^n} to (x_n mod m)/m.
struct XiData {
  QuadRational xi;  // c1/m, always positive
  QuadRational c2;
  RecurrenceInstance inst;  // certificate instance, negated when c1 was < 0
  Int m;
  std::vector<Int> period;        // orbit residues in order, length tau
  std::vector<Int> residues;      // sorted distinct residues, all nonzero
  std::vector<mpq_class> limits;  // sorted r/m over the residues
  mpq_class tail_coeff;
  mpq_class tail_ratio;  // in (0, 1)
  bool negated = false;
  std::uint64_t tau = 0;
};

// Requires cert.a1 >= 1 and cert.nonzero; throws InputError otherwise, or
// when the instance re-simulates to a different residue set than certified.
XiData xi_from_certificate(const Certificate& cert);

// One step of the fractional orbit: frac(xi * alpha^n) lies within `radius`
// of `center` on the circle R/Z, with center = residue/m.
struct FracPoint {
  std::uint64_t n = 0;
  Int residue;
  mpq_class center;
  mpq_class radius;
};

struct FracOrbit {
  std::vector<FracPoint> points;  // n = 0 .. N
  // First index whose radius is below both eps/2 and half the smallest gap
  // between limit points (boundaries 0 and 1 included): from here on every
  // interval has width < eps and determines its nearest limit uniquely.
  std::uint64_t n0 = 0;
  bool conclusive = false;  // N >= n0
};

FracOrbit frac_orbit(const XiData& xd, std::uint64_t horizon,
                     const mpq_class& eps);

struct Cluster {
  mpq_class value;
  std::uint64_t count = 0;        // tail points certified near this value
  mpq_class max_deviation;        // largest certified radius among them
};

struct LimitReport {
  QuadRational xi;
  std::uint64_t k = 0;  // expected number of limit points
  std::vector<mpq_class> predicted;
  std::vector<Cluster> clusters;
  bool pass = false;
  std::uint64_t n0 = 0;
  // Tail [n0, horizon] exists and covers a full period, so every limit is
  // approached by its residue-class subsequence within the sample.
  bool conclusive = false;
};

// Certifies that {xi * alpha^n} has exactly cert.target limit points r_i/m:
// every tail point lies within eps of its predicted limit and every limit is
// realized by the subsequence of its orbit positions.
LimitReport verify_limit_points(const Certificate& cert, std::uint64_t horizon,
                                const mpq_class& eps);

}  // namespace residua
