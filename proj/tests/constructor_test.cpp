#include <set>
#include <vector>

#include "doctest.h"
#include "residua/constructor.hpp"

using residua::Certificate;
using residua::Int;
using residua::RingParams;

namespace {

// Expected table contents, duplicated literally so a library-side edit of
// the embedded rows cannot silently pass.
struct Row {
  int row;
  long a1, x0, x1, m;
  std::uint64_t tau, rho;
  bool nonzero;
};
const std::vector<Row> kExpected = {
    {1, 1, 0, 1, 3, 8, 3, false},  {2, 1, 1, 3, 5, 4, 4, true},
    {3, 1, 1, 3, 8, 12, 6, true},  {4, 1, 1, 3, 10, 12, 8, true},
    {5, 1, 1, 3, 13, 28, 12, true}, {6, 1, 1, 3, 17, 36, 16, true},
    {7, 1, 1, 3, 28, 48, 20, true}, {8, 1, 1, 3, 26, 84, 24, true},
    {9, 1, 1, 3, 56, 48, 28, true}, {10, 1, 1, 3, 52, 84, 36, true},
    {11, 1, 1, 3, 78, 168, 48, true}, {12, 2, 1, 1, 4, 4, 2, true},
    {13, 2, 1, 1, 5, 12, 4, true},  {14, 2, 1, 1, 28, 12, 8, true},
    {15, 2, 1, 1, 13, 28, 12, true}, {16, 2, 1, 1, 39, 56, 24, true},
    {17, 3, 1, 1, 9, 6, 3, true},   {18, 3, 1, 1, 8, 12, 6, true},
    {19, 3, 1, 1, 17, 16, 12, true}};

template <class T>
const T& path_as(const Certificate& cert) {
  REQUIRE(std::holds_alternative<T>(cert.path.alt));
  return std::get<T>(cert.path.alt);
}

std::set<Int> residue_set(const Certificate& cert) {
  return std::set<Int>(cert.residues.begin(), cert.residues.end());
}

// Independent re-check: simulate the orbit and compare every certified field.
void check_certificate(const Certificate& cert) {
  REQUIRE(cert.verified);
  auto st = residua::orbit_stats(cert.instance(), cert.m);
  CHECK(st.rho == cert.target);
  CHECK(st.tau == cert.tau);
  CHECK(st.residues == cert.residues);
  CHECK(st.nonzero == cert.nonzero);
}

}  // namespace

TEST_SUITE("constructor") {

TEST_CASE("embedded table rows replay under simulation") {
  const auto& table = residua::special_case_table();
  REQUIRE(table.size() == kExpected.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& got = table[i];
    const auto& want = kExpected[i];
    CHECK(got.row == want.row);
    CHECK(got.a1 == want.a1);
    CHECK(got.x0 == want.x0);
    CHECK(got.x1 == want.x1);
    CHECK(got.m == want.m);
    CHECK(got.tau == want.tau);
    CHECK(got.rho == want.rho);
    CHECK(got.nonzero == want.nonzero);
    auto st = residua::orbit_stats({want.a1, want.x0, want.x1}, want.m);
    CHECK(st.tau == want.tau);
    CHECK(st.rho == want.rho);
    CHECK(st.nonzero == want.nonzero);
  }
}

TEST_CASE("table lookup honours the nonzero filter") {
  auto hit = residua::table_lookup(1, 4, false);
  REQUIRE(hit.has_value());
  CHECK(hit->m == 5);
  CHECK(path_as<residua::path::TableRef>(*hit).row == 2);
  check_certificate(*hit);

  CHECK(!residua::table_lookup(1, 3, true).has_value());
  auto zero_ok = residua::table_lookup(1, 3, false);
  REQUIRE(zero_ok.has_value());
  CHECK(zero_ok->m == 3);
  CHECK(!zero_ok->nonzero);

  CHECK(!residua::table_lookup(5, 3, false).has_value());
}

TEST_CASE("four residues for every coefficient") {
  using residua::path::N4;
  using residua::path::N4Branch;
  {
    Certificate c = residua::construct_n4(1);
    CHECK(c.m == 5);
    CHECK(path_as<N4>(c).branch == N4Branch::table);
    check_certificate(c);
  }
  {
    Certificate c = residua::construct_n4(2);
    CHECK(c.m == 5);
    CHECK(path_as<N4>(c).branch == N4Branch::table);
  }
  {
    Certificate c = residua::construct_n4(3);
    CHECK(c.m == 6);
    CHECK(c.x0 == 1);
    CHECK(c.x1 == 2);
    CHECK(c.tau == 6);
    CHECK(residue_set(c) == std::set<Int>{1, 2, 4, 5});
    CHECK(path_as<N4>(c).branch == N4Branch::odd_a1);
    check_certificate(c);
  }
  {
    Certificate c = residua::construct_n4(4);
    CHECK(c.m == 8);
    CHECK(c.x0 == 1);
    CHECK(c.x1 == 3);
    CHECK(c.tau == 4);
    CHECK(residue_set(c) == std::set<Int>{1, 3, 5, 7});
    CHECK(path_as<N4>(c).branch == N4Branch::even_a1);
  }
  {
    Certificate c = residua::construct_n4(5);
    CHECK(c.m == 10);
    CHECK(residue_set(c) == std::set<Int>{1, 2, 6, 7});
    check_certificate(c);
  }
  for (long a1 = 1; a1 <= 12; ++a1) {
    Certificate c = residua::construct_n4(a1);
    CHECK(c.target == 4);
    CHECK(c.nonzero);
    CHECK(c.verified);
  }
}

TEST_CASE("root construction mod a primitive divisor") {
  using residua::path::OddPrimitive;
  RingParams ring1(1);
  {
    auto c = residua::construct_odd_primitive(ring1, 5, false);
    REQUIRE(c.has_value());
    CHECK(c->m == 11);
    CHECK(c->x0 == 1);
    CHECK(c->x1 == 4);
    CHECK(c->target == 5);
    CHECK(c->tau == 5);
    const auto& p = path_as<OddPrimitive>(*c);
    CHECK(p.index == 5);
    CHECK(p.p == 11);
    CHECK(p.root == 4);
    CHECK(p.order == 5);
    check_certificate(*c);
  }
  {
    // Doubled: pick the companion root 8, whose 5th power is -1 mod 11.
    auto c = residua::construct_odd_primitive(ring1, 5, true);
    REQUIRE(c.has_value());
    CHECK(c->m == 11);
    CHECK(c->x1 == 8);
    CHECK(c->target == 10);
    CHECK(c->tau == 10);
    CHECK(path_as<OddPrimitive>(*c).order == 10);
    check_certificate(*c);
  }
  {
    auto c = residua::construct_odd_primitive(RingParams(2), 3, true);
    REQUIRE(c.has_value());
    CHECK(c->m == 7);
    CHECK(c->x1 == 5);
    CHECK(c->target == 6);
    check_certificate(*c);
  }
  CHECK_THROWS_AS(residua::construct_odd_primitive(ring1, 2, false),
                  residua::InputError);
  // Even index needs both the doubled flag and an explicit split prime.
  CHECK_THROWS_AS(residua::construct_odd_primitive(ring1, 8, true),
                  residua::InputError);
}

TEST_CASE("parity-class shift avoids the excluded values") {
  CHECK(residua::choose_parity_c(RingParams(1), 47, 1, 16) == 4);
  CHECK(residua::choose_parity_c(RingParams(4), 3, 2, 4) == 1);
}

TEST_CASE("doubled constructions for targets divisible by four") {
  using residua::path::EvenInertCombine;
  using residua::path::EvenSplit;
  {
    Certificate c = residua::construct_even(RingParams(1), 16);
    CHECK(c.target == 32);
    CHECK(c.m == 235);
    const auto& p = path_as<EvenInertCombine>(c);
    CHECK(p.index == 16);
    CHECK(p.p == 47);
    CHECK(p.v == 1);
    CHECK(p.c == 4);
    CHECK(p.m2 == 5);
    CHECK(p.d == 4);
    check_certificate(c);
  }
  {
    // l_8 at a1 = 2 has the split high divisor 17; root 7 has order 16.
    Certificate c = residua::construct_even(RingParams(2), 8);
    CHECK(c.target == 16);
    CHECK(c.m == 17);
    CHECK(c.x0 == 1);
    CHECK(c.x1 == 7);
    const auto& p = path_as<EvenSplit>(c);
    CHECK(p.index == 8);
    CHECK(p.p == 17);
    check_certificate(c);
  }
  {
    Certificate c = residua::construct_even(RingParams(4), 4);
    CHECK(c.target == 8);
    CHECK(c.m == 36);
    CHECK(c.x0 == 28);
    CHECK(c.x1 == 1);
    const auto& p = path_as<EvenInertCombine>(c);
    CHECK(p.index == 4);
    CHECK(p.p == 3);
    CHECK(p.v == 2);
    CHECK(p.c == 1);
    CHECK(p.m2 == 4);
    CHECK(p.d == 2);
    check_certificate(c);
  }
}

TEST_CASE("inert combination satisfies the per-class count condition") {
  // The (1, c) component must have a full-length orbit with balanced
  // residue counts in every index class mod 2 and mod 4, all nonzero.
  auto st = residua::orbit_stats({1, 1, 4}, 47, {2, 4});
  CHECK(st.tau == 32);
  CHECK(st.nonzero);
  for (std::uint64_t r = 0; r < 2; ++r)
    CHECK(st.class_rho.at({2, r}) == 16);
  for (std::uint64_t r = 0; r < 4; ++r)
    CHECK(st.class_rho.at({4, r}) == 8);
}

TEST_CASE("full dispatch on frozen instances") {
  using residua::path::EvenInertCombine;
  using residua::path::OddPrimitive;
  using residua::path::Reversed;
  {
    Certificate c = residua::construct(1, 5);
    CHECK(c.m == 11);
    CHECK(c.x0 == 1);
    CHECK(c.x1 == 4);
  }
  {
    // Negative coefficient: reversal of the a1 = 1 certificate.
    Certificate c = residua::construct(-1, 5);
    CHECK(c.a1 == -1);
    CHECK(c.m == 11);
    CHECK(c.x0 == 3);
    CHECK(c.x1 == 9);
    CHECK(c.target == 5);
    const auto& rev = path_as<Reversed>(c);
    REQUIRE(rev.inner != nullptr);
    CHECK(std::holds_alternative<OddPrimitive>(rev.inner->alt));
    check_certificate(c);
  }
  {
    Certificate c = residua::construct(1, 32);
    CHECK(c.m == 235);
    CHECK(c.x0 == 1);
    CHECK(c.x1 == 98);
    check_certificate(c);
  }
  {
    Certificate c = residua::construct(2, 20);
    CHECK(c.m == 58);
    CHECK(c.x0 == 30);
    CHECK(c.x1 == 33);
    const auto& p = path_as<EvenInertCombine>(c);
    CHECK(p.index == 10);
    CHECK(p.p == 29);
    CHECK(p.m2 == 2);
  }
  {
    Certificate c = residua::construct(3, 20);
    CHECK(c.m == 327);
    CHECK(c.x0 == 219);
    CHECK(c.x1 == 1);
    const auto& p = path_as<EvenInertCombine>(c);
    CHECK(p.index == 10);
    CHECK(p.p == 109);
    CHECK(p.m2 == 3);
  }
  {
    Certificate c = residua::construct(2, 6);
    CHECK(c.m == 7);
    CHECK(c.x1 == 5);
  }
  {
    // Large primitive divisor: l_53 at a1 = 2 factors over two primes
    // beyond the trial range.
    Certificate c = residua::construct(2, 53);
    CHECK(c.m == 9940681);
    CHECK(c.x1 == Int("4896383"));
    const auto& p = path_as<OddPrimitive>(c);
    CHECK(p.index == 53);
    CHECK(p.order == 53);
    check_certificate(c);
  }
}

TEST_CASE("small targets and degenerate coefficients") {
  {
    Certificate c = residua::construct(5, 1);
    CHECK(c.m == 1);
    CHECK(c.target == 1);
  }
  {
    Certificate c = residua::construct(5, 1, true);
    CHECK(c.m == 5);
    CHECK(c.residues == std::vector<Int>{1});
    CHECK(c.nonzero);
  }
  {
    Certificate c = residua::construct(5, 2, true);
    CHECK(c.m == 5);
    CHECK(residue_set(c) == std::set<Int>{1, 2});
  }
  {
    Certificate c = residua::construct(2, 2, true);
    CHECK(c.m == 4);
    CHECK(residue_set(c) == std::set<Int>{1, 3});
  }
  {
    Certificate c = residua::construct(0, 1);
    CHECK(c.m == 1);
  }
  {
    Certificate c = residua::construct(0, 1, true);
    CHECK(c.nonzero);
    check_certificate(c);
  }
  {
    Certificate c = residua::construct(0, 2);
    CHECK(c.m == 2);
    CHECK(residue_set(c) == std::set<Int>{0, 1});
  }
  {
    Certificate c = residua::construct(0, 2, true);
    CHECK(c.m == 4);
    CHECK(residue_set(c) == std::set<Int>{1, 3});
    check_certificate(c);
  }
}

TEST_CASE("unrepresentable and impossible requests") {
  CHECK_THROWS_AS(residua::construct(0, 3), residua::Unrepresentable);
  CHECK_THROWS_AS(residua::construct(0, 5, true), residua::Unrepresentable);
  CHECK_THROWS_AS(residua::construct(1, 1, true),
                  residua::ImpossibleNonzero);
  CHECK_THROWS_AS(residua::construct(1, 2, true),
                  residua::ImpossibleNonzero);
  CHECK_THROWS_AS(residua::construct(1, 3, true),
                  residua::ImpossibleNonzero);
  CHECK_THROWS_AS(residua::construct(-1, 3, true),
                  residua::ImpossibleNonzero);
  CHECK_THROWS_AS(residua::construct(1, 0), residua::InputError);
}

TEST_CASE("starved factoring budget surfaces as a budget error") {
  residua::FactorBudget tiny;
  tiny.trial_bound = 1000;
  tiny.rho_iterations = 4;
  bool thrown = false;
  try {
    residua::construct(2, 53, false, tiny);
  } catch (const residua::BudgetExceeded& e) {
    thrown = true;
    CHECK(e.index == 53);
  }
  CHECK(thrown);
}

TEST_CASE("every target up to 30 is reached exactly") {
  for (long a1 : {1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L}) {
    for (std::uint64_t n = 1; n <= 30; ++n) {
      Certificate c = residua::construct(a1, n);
      CHECK(c.verified);
      CHECK(c.target == n);
      CHECK(c.residues.size() == n);
      bool representable = std::labs(a1) >= 2 || n >= 4;
      if (!representable) continue;
      Certificate nz = residua::construct(a1, n, true);
      CHECK(nz.nonzero);
      CHECK(nz.residues.size() == n);
    }
  }
}

}  // TEST_SUITE
