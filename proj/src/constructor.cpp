#include "residua/constructor.hpp"

#include <set>
#include <utility>

namespace residua {
namespace {

const std::vector<TableRow> kTable = {
    {1, 1, 0, 1, 3, 8, 3, false},   {2, 1, 1, 3, 5, 4, 4, true},
    {3, 1, 1, 3, 8, 12, 6, true},   {4, 1, 1, 3, 10, 12, 8, true},
    {5, 1, 1, 3, 13, 28, 12, true}, {6, 1, 1, 3, 17, 36, 16, true},
    {7, 1, 1, 3, 28, 48, 20, true}, {8, 1, 1, 3, 26, 84, 24, true},
    {9, 1, 1, 3, 56, 48, 28, true}, {10, 1, 1, 3, 52, 84, 36, true},
    {11, 1, 1, 3, 78, 168, 48, true},
    {12, 2, 1, 1, 4, 4, 2, true},   {13, 2, 1, 1, 5, 12, 4, true},
    {14, 2, 1, 1, 28, 12, 8, true}, {15, 2, 1, 1, 13, 28, 12, true},
    {16, 2, 1, 1, 39, 56, 24, true},
    {17, 3, 1, 1, 9, 6, 3, true},   {18, 3, 1, 1, 8, 12, 6, true},
    {19, 3, 1, 1, 17, 16, 12, true},
};

Int pow_ui(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Simulate the orbit and fill tau/residues/nonzero/verified; a residue
// count different from target means a bug in the construction, not bad
// input, hence InternalError.
Certificate finish(long a1, std::uint64_t target, Int m, Int x0, Int x1,
                   ConstructionPath path) {
  Certificate cert;
  cert.a1 = a1;
  cert.target = target;
  cert.m = std::move(m);
  cert.x0 = std::move(x0);
  cert.x1 = std::move(x1);
  cert.path = std::move(path);
  OrbitStats s = orbit_stats(cert.instance(), cert.m);
  if (s.rho != target)
    throw InternalError("construct: certificate failed re-simulation");
  cert.tau = s.tau;
  cert.residues = std::move(s.residues);
  cert.nonzero = s.nonzero;
  cert.verified = true;
  return cert;
}

}  // namespace

const std::vector<TableRow>& special_case_table() { return kTable; }

std::optional<Certificate> table_lookup(long a1, std::uint64_t n,
                                        bool require_nonzero) {
  for (const TableRow& r : kTable) {
    if (r.a1 != a1 || r.rho != n) continue;
    if (require_nonzero && !r.nonzero) continue;
    Certificate cert = finish(a1, n, Int(r.m), Int(r.x0), Int(r.x1),
                              {path::TableRef{r.row}});
    if (cert.tau != r.tau || cert.nonzero != r.nonzero)
      throw InternalError("table_lookup: stored row does not replay");
    return cert;
  }
  return std::nullopt;
}

Certificate construct_n4(long a1) {
  if (a1 < 1) throw InputError("construct_n4: a1 must be >= 1");
  if (a1 <= 2) {
    auto cert = table_lookup(a1, 4, true);
    if (!cert) throw InternalError("construct_n4: table row missing");
    cert->path = {path::N4{path::N4Branch::table}};
    return *cert;
  }
  const bool odd = a1 % 2 == 1;
  Certificate cert =
      finish(a1, 4, Int(2 * a1), Int(1), Int(odd ? 2 : 3),
             {path::N4{odd ? path::N4Branch::odd_a1 : path::N4Branch::even_a1}});
  if (!cert.nonzero) throw InternalError("construct_n4: zero residue");
  return cert;
}

std::optional<Certificate> construct_odd_primitive(
    const RingParams& ring, std::uint64_t index, bool doubled,
    const FactorBudget& budget, const std::optional<Int>& forced_p) {
  if (index < 3) throw InputError("construct_odd_primitive: index must be >= 3");
  if (index % 2 == 0 && !(doubled && forced_p))
    throw InputError(
        "construct_odd_primitive: even index requires doubled and explicit p");
  Int p = 0;
  if (forced_p) {
    p = *forced_p;
  } else {
    PrimitiveDivisorReport rep = primitive_divisors(ring, index, budget);
    for (const auto& fe : rep.primitive)
      if (fe.prime != 2) {
        p = fe.prime;  // smallest odd primitive divisor
        break;
      }
    if (p == 0) {
      if (!rep.complete)
        throw BudgetExceeded("construct_odd_primitive: factoring inconclusive",
                             index);
      return std::nullopt;  // exceptional index; caller falls back to table
    }
  }
  // Odd-index primitive divisors always split, so a failure here is a bug
  // rather than a case split.
  if (split_type(ring, p) != SplitType::split)
    throw InternalError("construct_odd_primitive: divisor does not split");

  const Int r1 = lift_root(ring, p, 1);
  Int r2 = Int(ring.a1) - r1;
  mpz_mod(r2.get_mpz_t(), r2.get_mpz_t(), p.get_mpz_t());
  // ord(root^2) = index for both roots, so root^index is a square root of 1;
  // -1 marks order 2*index, +1 marks order index.
  auto half_power = [&](const Int& r) {
    Int t;
    Int e(static_cast<unsigned long>(index));
    mpz_powm(t.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (t != 1 && t != p - 1)
      throw InternalError("construct_odd_primitive: root order out of range");
    return t == 1;  // true: order = index
  };
  const bool low1 = half_power(r1);
  const bool low2 = half_power(r2);
  Int root;
  if (doubled) {
    if (!low1)
      root = r1;
    else if (!low2)
      root = r2;
    else
      throw InternalError("construct_odd_primitive: no root of doubled order");
  } else {
    if (low1)
      root = r1;
    else if (low2)
      root = r2;
    else
      throw InternalError("construct_odd_primitive: no root of plain order");
  }
  const std::uint64_t order = doubled ? 2 * index : index;
  ConstructionPath path =
      forced_p ? ConstructionPath{path::EvenSplit{index, p}}
               : ConstructionPath{path::OddPrimitive{index, p, root, order}};
  Certificate cert =
      finish(ring.a1, order, p, Int(1), root, std::move(path));
  // x_n = root^n mod p, so the period must equal the root's order and every
  // residue is a unit.
  if (cert.tau != order || !cert.nonzero)
    throw InternalError("construct_odd_primitive: orbit shape unexpected");
  return cert;
}

Int choose_parity_c(const RingParams& ring, const Int& p, unsigned v,
                    std::uint64_t n) {
  if (v < 1) throw InputError("choose_parity_c: v must be >= 1");
  if (n < 1) throw InputError("choose_parity_c: n must be >= 1");
  if (split_type(ring, p) != SplitType::inert)
    throw InputError("choose_parity_c: p must be inert");
  const Int pv = pow_ui(p, v);
  if (pv <= Int(static_cast<unsigned long>(n)))
    throw InputError("choose_parity_c: need p^v > n");
  // Excluded values (beta - alpha^(2k+1)) / (1 - alpha^(2k)) in the quotient
  // ring; only those lying in the prime subring can collide with c.
  const ModQuad one = ModQuad::from_int(ring, pv, 1);
  const ModQuad alpha = ModQuad::alpha(ring, pv);
  const ModQuad beta = ModQuad(ring, pv, Int(ring.a1), Int(-1));
  const ModQuad alpha2 = alpha * alpha;
  std::set<Int> excluded;
  ModQuad apow = one;  // alpha^(2k)
  for (std::uint64_t k = 0; k < n; ++k, apow = apow * alpha2) {
    ModQuad denom = one - apow;
    if (!denom.invertible()) continue;
    ModQuad val = (beta - alpha * apow) * denom.inverse();
    if (val.alpha_coeff() == 0) excluded.insert(val.unit());
  }
  for (Int c = 0; c < pv; ++c)
    if (!excluded.contains(c)) return c;
  throw InternalError("choose_parity_c: no admissible c below p^v");
}

Certificate construct_even(const RingParams& ring, std::uint64_t index,
                           const FactorBudget& budget) {
  if (index < 4 || index % 2 != 0)
    throw InputError("construct_even: index must be even and >= 4");
  HighPrimitiveResult hp = high_primitive_divisor(ring, index, budget);
  if (hp.status == HighPrimitiveStatus::unknown)
    throw BudgetExceeded("construct_even: high-divisor search inconclusive",
                         index);
  if (hp.status == HighPrimitiveStatus::none)
    throw InternalError(
        "construct_even: no high primitive divisor despite guarantee");
  if (split_type(ring, hp.p) == SplitType::split) {
    auto cert = construct_odd_primitive(ring, index, true, budget, hp.p);
    if (!cert) throw InternalError("construct_even: forced delegation failed");
    return *cert;
  }
  const unsigned v = hp.exponent;
  const Int pv = pow_ui(hp.p, v);
  const Int c = choose_parity_c(ring, hp.p, v, index);
  RecurrenceInstance i1{ring.a1, Int(1), c};
  RecurrenceInstance i2;
  Int m2;
  if (ring.a1 == 1) {
    i2 = {1, Int(1), Int(3)};  // table row 2, m2 = 5 = D
    m2 = 5;
  } else {
    i2 = {ring.a1, Int(0), Int(1)};
    m2 = ring.a1;
  }
  CrtCombined comb = crt_combine(i1, pv, i2, m2);
  if (comb.predicted_rho != 2 * index)
    throw InternalError("construct_even: combination count mismatch");
  Certificate cert = finish(
      ring.a1, 2 * index, comb.m, comb.inst.x0, comb.inst.x1,
      {path::EvenInertCombine{index, hp.p, v, c, m2, comb.d}});
  if (!cert.nonzero) throw InternalError("construct_even: zero residue");
  return cert;
}

Certificate construct(long a1, std::uint64_t n, bool require_nonzero,
                      const FactorBudget& budget) {
  if (n < 1) throw InputError("construct: n must be >= 1");
  auto done = [&](Certificate cert) {
    if (require_nonzero && !cert.nonzero)
      throw InternalError("construct: zero residue in a zero-free request");
    return cert;
  };

  if (a1 == 0) {
    // Characteristic polynomial X^2 - 1: sequences alternate x0, x1, so
    // only 1 or 2 residues are possible.
    if (n == 1)
      return done(require_nonzero
                      ? finish(0, 1, Int(2), Int(1), Int(1),
                               {path::NonzeroSmall{1}})
                      : finish(0, 1, Int(1), Int(0), Int(0),
                               {path::Trivial1{}}));
    if (n == 2)
      return done(require_nonzero
                      ? finish(0, 2, Int(4), Int(1), Int(3),
                               {path::NonzeroSmall{2}})
                      : finish(0, 2, Int(2), Int(0), Int(1),
                               {path::Parity2{}}));
    throw Unrepresentable("construct: a1 = 0 attains only 1 or 2 residues");
  }

  if (a1 < 0) {
    Certificate inner = construct(-a1, n, require_nonzero, budget);
    RecurrenceInstance rev = reverse_instance(inner.instance(), inner.m);
    Certificate cert = finish(
        a1, n, inner.m, rev.x0, rev.x1,
        {path::Reversed{std::make_shared<const ConstructionPath>(inner.path)}});
    if (cert.tau != inner.tau || cert.nonzero != inner.nonzero)
      throw InternalError("construct: reversal changed orbit statistics");
    return done(std::move(cert));
  }

  if (require_nonzero && a1 == 1 && n <= 3)
    throw ImpossibleNonzero(
        "construct: |a1| = 1 has no zero-free certificate for n <= 3");

  if (n == 1)
    return done(require_nonzero
                    ? finish(a1, 1, Int(a1), Int(1), Int(1),
                             {path::NonzeroSmall{1}})
                    : finish(a1, 1, Int(1), Int(0), Int(0),
                             {path::Trivial1{}}));
  if (n == 2) {
    if (!require_nonzero)
      return finish(a1, 2, Int(2), Int(0), Int(1), {path::Parity2{}});
    if (a1 == 2) return done(*table_lookup(2, 2, true));  // row 12
    return done(
        finish(a1, 2, Int(a1), Int(1), Int(2), {path::NonzeroSmall{2}}));
  }
  if (n == 4) return done(construct_n4(a1));

  RingParams ring(a1);
  auto table_fallback = [&](std::uint64_t target) {
    auto cert = table_lookup(a1, target, require_nonzero);
    if (!cert)
      throw InternalError("construct: exceptional case missing from table");
    return done(std::move(*cert));
  };

  if (n % 2 == 1) {
    if (!guarantee_odd_primdiv(a1, n)) return table_fallback(n);
    auto cert = construct_odd_primitive(ring, n, false, budget);
    if (!cert)
      throw InternalError("construct: guaranteed odd divisor not found");
    return done(std::move(*cert));
  }
  const std::uint64_t half = n / 2;
  if (half % 2 == 1) {  // n = 2 (mod 4), half odd >= 3
    if (!guarantee_odd_primdiv(a1, half)) return table_fallback(n);
    auto cert = construct_odd_primitive(ring, half, true, budget);
    if (!cert)
      throw InternalError("construct: guaranteed odd divisor not found");
    return done(std::move(*cert));
  }
  // n = 0 (mod 4) and n >= 8, so half is even and >= 4.
  if (!guarantee_high_primdiv(a1, half)) return table_fallback(n);
  return done(construct_even(ring, half, budget));
}

}  // namespace residua
