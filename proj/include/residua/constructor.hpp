#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "residua/lehmer.hpp"
#include "residua/recurrence.hpp"

namespace residua {

// One row of the embedded special-case table: an instance whose orbit mod m
// attains exactly rho residues.  Re-verified by simulation in the tests.
struct TableRow {
  int row;
  long a1;
  long x0, x1;
  long m;
  std::uint64_t tau;
  std::uint64_t rho;
  bool nonzero;
};

const std::vector<TableRow>& special_case_table();

struct ConstructionPath;

namespace path {

// m = 1; every sequence has one residue.
struct Trivial1 {};
// m = 2 with x0 != x1 mod 2; every such orbit hits both residues.
struct Parity2 {};
// Zero-free certificates with m = a1: n = 1 uses (1, 1), n = 2 uses (1, 2).
struct NonzeroSmall {
  std::uint64_t n = 0;
};
// Direct hit in the embedded table.
struct TableRef {
  int row = 0;
};
// The dedicated rho = 4 construction; branch selects between the two
// closed-form instances mod 2*a1 and the small-a1 table rows.
enum class N4Branch { odd_a1, even_a1, table };
struct N4 {
  N4Branch branch = N4Branch::table;
};
// (1, root) mod p where root is a residue root of X^2 - a1*X - 1 with
// multiplicative order `order` (= index for rho = index, or 2*index for the
// doubled variant).
struct OddPrimitive {
  std::uint64_t index = 0;  // Lehmer index whose primitive divisor is p
  Int p;
  Int root;
  std::uint64_t order = 0;
};
// Doubled construction through a split high primitive divisor of l_index.
struct EvenSplit {
  std::uint64_t index = 0;
  Int p;
};
// Inert high-primitive-divisor construction combined with a small second
// modulus by CRT: (1, c) mod p^v  x  second instance mod m2, d = gcd of the
// component periods.
struct EvenInertCombine {
  std::uint64_t index = 0;
  Int p;
  unsigned v = 1;
  Int c;
  Int m2;
  std::uint64_t d = 0;
};
// Negative a1: reversal of a certificate for |a1|.
struct Reversed {
  std::shared_ptr<const ConstructionPath> inner;
};

}  // namespace path

struct ConstructionPath {
  std::variant<path::Trivial1, path::Parity2, path::NonzeroSmall,
               path::TableRef, path::N4, path::OddPrimitive, path::EvenSplit,
               path::EvenInertCombine, path::Reversed>
      alt;
};

// A self-contained witness that the recurrence (a1, x0, x1) attains exactly
// `target` distinct residues mod m.  verified is set only after the orbit
// has been re-simulated and matched against target and the nonzero flag.
struct Certificate {
  long a1 = 0;
  std::uint64_t target = 0;
  Int m;
  Int x0, x1;
  std::uint64_t tau = 0;
  std::vector<Int> residues;
  bool nonzero = false;
  ConstructionPath path;
  bool verified = false;

  RecurrenceInstance instance() const { return {a1, x0, x1}; }
};

// Table row with matching (a1, rho = n), if any; respects require_nonzero.
std::optional<Certificate> table_lookup(long a1, std::uint64_t n,
                                        bool require_nonzero);

// rho = 4 for any a1 >= 1; all residues nonzero.
Certificate construct_n4(long a1);

// (1, root) mod p for a primitive divisor p of l_index.  For odd index the
// certificate has rho = index (doubled = false) or 2*index (doubled = true).
// Even index requires doubled = true and a split p supplied via forced_p.
// Returns nullopt when a complete search finds no usable divisor (the
// caller falls back to the table); throws BudgetExceeded when the search
// was inconclusive.
std::optional<Certificate> construct_odd_primitive(
    const RingParams& ring, std::uint64_t index, bool doubled,
    const FactorBudget& budget = {}, const std::optional<Int>& forced_p = {});

// Smallest c in [0, p^v) avoiding every excluded value
// (beta - alpha^(2k+1)) / (1 - alpha^(2k)) mod p^v, k = 0..n-1 (terms with
// non-invertible denominator never exclude; values outside the prime
// subring cannot equal an integer c).  Requires an inert p with p^v > n.
Int choose_parity_c(const RingParams& ring, const Int& p, unsigned v,
                    std::uint64_t n);

// rho = 2*index for even index >= 4 via a high primitive divisor of
// l_index: split divisors delegate to the doubled root construction;
// inert ones build (1, c) mod p^v and CRT-combine with a small instance.
Certificate construct_even(const RingParams& ring, std::uint64_t index,
                           const FactorBudget& budget = {});

// Full dispatch: any nonzero a1, any target n >= 1.  require_nonzero asks
// for a certificate whose residues avoid 0 (possible iff |a1| >= 2, or
// |a1| = 1 and n >= 4).
Certificate construct(long a1, std::uint64_t n, bool require_nonzero = false,
                      const FactorBudget& budget = {});

}  // namespace residua
