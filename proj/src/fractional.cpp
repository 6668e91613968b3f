#include "residua/fractional.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace residua {
namespace {

mpq_class make_q(const Int& num, const Int& den) {
  mpq_class q(num);
  q /= mpq_class(den);
  return q;
}

Int gcd3(const Int& a, const Int& b, const Int& c) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

}  // namespace

QuadRational QuadRational::make(QuadInt num, Int den) {
  if (den == 0) throw InputError("QuadRational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int g = gcd3(num.unit(), num.alpha_coeff(), den);
  if (g > 1) {
    num = num.divexact(g);
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
  }
  return QuadRational{std::move(num), std::move(den)};
}

XiData xi_from_certificate(const Certificate& cert) {
  if (cert.a1 < 1)
    throw InputError("xi_from_certificate: a1 must be >= 1");
  if (!cert.nonzero)
    throw InputError("xi_from_certificate: certificate must be zero-free");
  RingParams ring(cert.a1);
  Int x0 = cert.x0, x1 = cert.x1;
  // c1 = (x1 - beta*x0)/sqrt(D); the numerator in Z[alpha] is
  // (x1 - a1*x0) + x0*alpha and fixes the sign of c1 since sqrt(D) > 0.
  QuadInt n1(ring, x1 - Int(cert.a1) * x0, x0);
  if (n1.is_zero())
    throw InputError("xi_from_certificate: zero sequence has no limit data");
  bool negated = false;
  if (n1.sign() < 0) {
    negated = true;
    x0 = -x0;
    x1 = -x1;
    n1 = -n1;
  }
  // c2 = (alpha*x0 - x1)/sqrt(D), so that x_n = c1*alpha^n + c2*beta^n.
  QuadInt n2(ring, -x1, x0);
  if (n2.is_zero())
    throw InputError("xi_from_certificate: c2 vanishes");
  const QuadInt sd = QuadInt::sqrt_disc(ring);
  QuadRational xi = QuadRational::make(n1 * sd, ring.D * cert.m);
  QuadRational c2 = QuadRational::make(n2 * sd, ring.D);

  RecurrenceInstance inst{cert.a1, x0, x1};
  OrbitStats s = orbit_stats(inst, cert.m);
  if (s.rho != cert.target)
    throw InputError("xi_from_certificate: certificate does not re-simulate");
  if (!s.nonzero)
    throw InputError("xi_from_certificate: orbit contains a zero residue");

  std::vector<mpq_class> limits;
  limits.reserve(s.residues.size());
  for (const Int& r : s.residues) limits.push_back(make_q(r, cert.m));

  // s_lo <= sqrt(D) < s_lo + 1 strictly (D is never a square), giving the
  // rational bounds alpha < (a1 + s_lo + 1)/2, sqrt(D) > s_lo and
  // |beta| = 2/(a1 + sqrt(D)) <= 2/(a1 + s_lo) < 1.
  Int s_lo;
  mpz_sqrt(s_lo.get_mpz_t(), ring.D.get_mpz_t());
  const Int ax0 = abs(x0), ax1 = abs(x1);
  mpq_class alpha_hi = make_q(Int(cert.a1) + s_lo + 1, 2);
  mpq_class c2_bound =
      (alpha_hi * mpq_class(ax0) + mpq_class(ax1)) / mpq_class(s_lo);
  mpq_class tail_coeff = c2_bound / mpq_class(cert.m);
  mpq_class tail_ratio = make_q(2, Int(cert.a1) + s_lo);

  return XiData{.xi = std::move(xi),
                .c2 = std::move(c2),
                .inst = std::move(inst),
                .m = cert.m,
                .period = std::move(s.period),
                .residues = std::move(s.residues),
                .limits = std::move(limits),
                .tail_coeff = std::move(tail_coeff),
                .tail_ratio = std::move(tail_ratio),
                .negated = negated,
                .tau = s.tau};
}

FracOrbit frac_orbit(const XiData& xd, std::uint64_t horizon,
                     const mpq_class& eps) {
  if (eps <= 0 || eps >= 1)
    throw InputError("frac_orbit: eps must lie in (0, 1)");
  mpq_class min_gap = xd.limits.front();  // gap to the boundary 0
  for (std::size_t i = 0; i + 1 < xd.limits.size(); ++i)
    min_gap = std::min(min_gap, mpq_class(xd.limits[i + 1] - xd.limits[i]));
  min_gap = std::min(min_gap, mpq_class(1 - xd.limits.back()));
  const mpq_class threshold = std::min(eps, min_gap) / 2;

  FracOrbit orbit;
  mpq_class radius = xd.tail_coeff;
  {
    mpq_class e = radius;
    while (e >= threshold) {
      e *= xd.tail_ratio;
      ++orbit.n0;
    }
  }
  orbit.conclusive = horizon >= orbit.n0;
  orbit.points.reserve(horizon + 1);
  for (std::uint64_t n = 0; n <= horizon; ++n) {
    const Int& r = xd.period[n % xd.tau];
    orbit.points.push_back(FracPoint{n, r, make_q(r, xd.m), radius});
    radius *= xd.tail_ratio;
  }
  return orbit;
}

LimitReport verify_limit_points(const Certificate& cert, std::uint64_t horizon,
                                const mpq_class& eps) {
  XiData xd = xi_from_certificate(cert);
  FracOrbit orbit = frac_orbit(xd, horizon, eps);

  std::map<mpq_class, Cluster> by_value;
  for (const mpq_class& v : xd.limits) by_value.emplace(v, Cluster{v, 0, 0});
  bool tail_ok = true;
  for (const FracPoint& pt : orbit.points) {
    if (pt.n < orbit.n0) continue;
    auto it = by_value.find(pt.center);
    if (it == by_value.end() || pt.radius >= eps) {
      tail_ok = false;
      continue;
    }
    Cluster& cl = it->second;
    ++cl.count;
    cl.max_deviation = std::max(cl.max_deviation, pt.radius);
  }

  const bool conclusive =
      orbit.conclusive && horizon - orbit.n0 + 1 >= xd.tau;
  bool all_hit = true;
  std::vector<Cluster> clusters;
  clusters.reserve(by_value.size());
  for (auto& [value, cl] : by_value) {
    if (cl.count == 0) all_hit = false;
    clusters.push_back(std::move(cl));
  }

  LimitReport rep{.xi = xd.xi,
                  .k = cert.target,
                  .predicted = xd.limits,
                  .clusters = std::move(clusters),
                  .pass = false,
                  .n0 = orbit.n0,
                  .conclusive = conclusive};
  rep.pass = conclusive && tail_ok && all_hit &&
             rep.predicted.size() == rep.k;
  return rep;
}

}  // namespace residua
