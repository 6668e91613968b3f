// Command-line front end: construct and verify residue-count certificates,
// inspect the Lehmer-style divisibility sequence behind them, and check the
// limit points of the associated fractional orbits.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "residua/constructor.hpp"
#include "residua/fractional.hpp"
#include "residua/intmath.hpp"
#include "residua/json_io.hpp"
#include "residua/lehmer.hpp"
#include "residua/quadring.hpp"
#include "residua/recurrence.hpp"

namespace {

using residua::Certificate;
using residua::FactorBudget;
using residua::Int;

Int parse_big(const std::string& s, const char* what) {
  Int n;
  if (s.empty() || mpz_set_str(n.get_mpz_t(), s.c_str(), 10) != 0)
    throw residua::InputError(std::string(what) + ": not a decimal integer");
  return n;
}

std::string join_ints(const std::vector<Int>& v) {
  std::string out;
  for (const Int& n : v) {
    if (!out.empty()) out += ' ';
    out += n.get_str();
  }
  return out;
}

std::string describe_path(const residua::ConstructionPath& p);

struct PathPrinter {
  std::string operator()(const residua::path::Trivial1&) const {
    return "trivial (m = 1)";
  }
  std::string operator()(const residua::path::Parity2&) const {
    return "parity (m = 2)";
  }
  std::string operator()(const residua::path::NonzeroSmall& q) const {
    return "small zero-free n = " + std::to_string(q.n);
  }
  std::string operator()(const residua::path::TableRef& q) const {
    return "table row " + std::to_string(q.row);
  }
  std::string operator()(const residua::path::N4& q) const {
    using residua::path::N4Branch;
    const char* b = q.branch == N4Branch::odd_a1    ? "odd a1"
                    : q.branch == N4Branch::even_a1 ? "even a1"
                                                    : "table";
    return std::string("four-residue branch (") + b + ")";
  }
  std::string operator()(const residua::path::OddPrimitive& q) const {
    return "primitive divisor of l_" + std::to_string(q.index) + ": p = " +
           q.p.get_str() + ", root " + q.root.get_str() + " of order " +
           std::to_string(q.order);
  }
  std::string operator()(const residua::path::EvenSplit& q) const {
    return "split high divisor of l_" + std::to_string(q.index) +
           ": p = " + q.p.get_str();
  }
  std::string operator()(const residua::path::EvenInertCombine& q) const {
    return "inert high divisor of l_" + std::to_string(q.index) + ": p = " +
           q.p.get_str() + ", v = " + std::to_string(q.v) + ", c = " +
           q.c.get_str() + ", crt with m2 = " + q.m2.get_str() +
           " (d = " + std::to_string(q.d) + ")";
  }
  std::string operator()(const residua::path::Reversed& q) const {
    return "reversal of [" + describe_path(*q.inner) + "]";
  }
};

std::string describe_path(const residua::ConstructionPath& p) {
  return std::visit(PathPrinter{}, p.alt);
}

void print_certificate(const Certificate& cert, bool as_json) {
  if (as_json) {
    std::cout << residua::to_json(cert).dump(2) << '\n';
    return;
  }
  std::cout << "a1 = " << cert.a1 << "  target = " << cert.target << '\n'
            << "m = " << cert.m << "  x0 = " << cert.x0
            << "  x1 = " << cert.x1 << '\n'
            << "tau = " << cert.tau << "  rho = " << cert.residues.size()
            << "  nonzero = " << (cert.nonzero ? "yes" : "no") << '\n'
            << "residues: " << join_ints(cert.residues) << '\n'
            << "path: " << describe_path(cert.path) << '\n';
}

int run_construct(long a1, std::uint64_t n, bool nonzero, bool as_json,
                  const FactorBudget& budget) {
  Certificate cert = residua::construct(a1, n, nonzero, budget);
  print_certificate(cert, as_json);
  return 0;
}

int run_verify(long a1, const std::string& x0s, const std::string& x1s,
               const std::string& ms, const std::vector<std::uint64_t>& mods,
               bool as_json) {
  residua::RecurrenceInstance inst{a1, parse_big(x0s, "--x0"),
                                   parse_big(x1s, "--x1")};
  residua::OrbitStats s =
      residua::orbit_stats(inst, parse_big(ms, "--m"), mods);
  if (as_json) {
    std::cout << residua::to_json(s).dump(2) << '\n';
    return 0;
  }
  std::cout << "m = " << s.m << "  tau = " << s.tau << "  rho = " << s.rho
            << "  nonzero = " << (s.nonzero ? "yes" : "no") << '\n'
            << "residues: " << join_ints(s.residues) << '\n';
  for (const auto& [key, count] : s.class_rho)
    std::cout << "rho(d = " << key.first << ", r = " << key.second
              << ") = " << count << '\n';
  return 0;
}

int run_sweep(long a1_min, long a1_max, std::uint64_t n_min,
              std::uint64_t n_max, bool nonzero, const FactorBudget& budget) {
  if (a1_min > a1_max || n_min > n_max || n_min < 1)
    throw residua::InputError("sweep: empty range");
  std::uint64_t failures = 0;
  for (long a1 = a1_min; a1 <= a1_max; ++a1) {
    std::uint64_t ok = 0, expected_impossible = 0;
    for (std::uint64_t n = n_min; n <= n_max; ++n) {
      const bool impossible =
          (a1 == 0 && n > 2) || (nonzero && (a1 == 1 || a1 == -1) && n <= 3);
      try {
        Certificate cert = residua::construct(a1, n, nonzero, budget);
        residua::OrbitStats s = residua::orbit_stats(cert.instance(), cert.m);
        if (impossible || s.rho != n || (nonzero && !s.nonzero)) {
          ++failures;
          std::cout << "FAIL a1 = " << a1 << " n = " << n
                    << ": rho = " << s.rho << '\n';
        } else {
          ++ok;
        }
      } catch (const residua::Unrepresentable&) {
        impossible ? void(++expected_impossible) : void(++failures);
      } catch (const residua::ImpossibleNonzero&) {
        impossible ? void(++expected_impossible) : void(++failures);
      }
    }
    std::cout << "a1 = " << a1 << ": " << ok << " certificates";
    if (expected_impossible)
      std::cout << ", " << expected_impossible << " expected-impossible";
    std::cout << " over n = " << n_min << ".." << n_max << '\n';
  }
  if (failures) {
    std::cout << failures << " failures\n";
    return 1;
  }
  return 0;
}

int run_lehmer(long a1, std::uint64_t n, bool companion) {
  residua::RingParams ring(a1);
  std::cout << (companion ? residua::lehmer_companion(ring, n)
                          : residua::lehmer_term(ring, n))
            << '\n';
  return 0;
}

int run_primdiv(long a1, std::uint64_t n, bool high, bool as_json,
                const FactorBudget& budget) {
  residua::RingParams ring(a1);
  if (high) {
    residua::HighPrimitiveResult hp =
        residua::high_primitive_divisor(ring, n, budget);
    using residua::HighPrimitiveStatus;
    if (as_json) {
      nlohmann::json j;
      j["status"] = hp.status == HighPrimitiveStatus::found   ? "found"
                    : hp.status == HighPrimitiveStatus::none  ? "none"
                                                              : "unknown";
      if (hp.status == HighPrimitiveStatus::found) {
        j["p"] = hp.p.get_str();
        j["exponent"] = hp.exponent;
      }
      std::cout << j.dump(2) << '\n';
    } else if (hp.status == HighPrimitiveStatus::found) {
      std::cout << hp.p << "^" << hp.exponent << '\n';
    } else {
      std::cout << (hp.status == HighPrimitiveStatus::none ? "none"
                                                           : "unknown")
                << '\n';
    }
    return 0;
  }
  residua::PrimitiveDivisorReport rep =
      residua::primitive_divisors(ring, n, budget);
  if (as_json) {
    nlohmann::json j;
    j["n"] = rep.n;
    j["phi"] = rep.phi_n.get_str();
    j["complete"] = rep.complete;
    j["primitive"] = nlohmann::json::array();
    for (const auto& fe : rep.primitive)
      j["primitive"].push_back(
          {{"p", fe.prime.get_str()}, {"exponent", fe.exponent}});
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  if (rep.primitive.empty()) {
    std::cout << (rep.complete ? "none" : "unknown") << '\n';
    return 0;
  }
  std::string out;
  for (const auto& fe : rep.primitive) {
    if (!out.empty()) out += ' ';
    out += fe.prime.get_str() + "^" + std::to_string(fe.exponent);
  }
  std::cout << out << '\n';
  return 0;
}

int run_order(long a1, const std::string& ps, unsigned v,
              const FactorBudget& budget) {
  residua::RingParams ring(a1);
  const Int p = parse_big(ps, "--p");
  residua::OrderTriple t = residua::ord_alpha_beta(ring, p, v, budget);
  const char* kind =
      residua::split_type(ring, p) == residua::SplitType::split ? "split"
                                                                : "inert";
  std::cout << "p = " << p << "  v = " << v << "  " << kind << '\n'
            << "ord(alpha^2) = " << t.c << '\n'
            << "root orders: " << t.a << " " << t.b << '\n';
  if (t.root_2c)
    std::cout << "root of doubled order: " << *t.root_2c << '\n';
  return 0;
}

int run_frac(long a1, std::uint64_t k, std::uint64_t horizon, double eps,
             bool as_json, const FactorBudget& budget) {
  if (!(eps > 0.0 && eps < 1.0))
    throw residua::InputError("--eps must lie in (0, 1)");
  Certificate cert = residua::construct(a1, k, true, budget);
  residua::LimitReport rep =
      residua::verify_limit_points(cert, horizon, mpq_class(eps));
  if (as_json) {
    std::cout << residua::to_json(rep).dump(2) << '\n';
  } else {
    std::cout << "xi = (" << rep.xi.num.unit() << " + "
              << rep.xi.num.alpha_coeff() << "*alpha)/" << rep.xi.den << '\n'
              << "limits:";
    for (const mpq_class& q : rep.predicted) std::cout << ' ' << q.get_str();
    std::cout << '\n'
              << "n0 = " << rep.n0 << "  tail points per limit:";
    for (const residua::Cluster& cl : rep.clusters)
      std::cout << ' ' << cl.count;
    std::cout << '\n' << (rep.pass ? "pass" : "FAIL") << '\n';
  }
  if (!rep.pass)
    throw residua::InternalError("frac: verified certificate failed the "
                                 "limit-point check");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Second-order recurrences with a prescribed number of residues mod m"};
  app.require_subcommand(1);

  long a1 = 1;
  std::uint64_t n = 1;
  bool nonzero = false, as_json = false;
  std::uint64_t budget_iters = FactorBudget{}.rho_iterations;
  std::uint64_t seed = FactorBudget{}.seed;

  auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--budget", budget_iters,
                    "Pollard-rho iteration budget for factoring");
    cmd->add_option("--seed", seed, "factoring seed");
  };
  auto budget = [&]() {
    FactorBudget b;
    b.rho_iterations = budget_iters;
    b.seed = seed;
    return b;
  };

  CLI::App* c_construct =
      app.add_subcommand("construct", "certificate with exactly n residues");
  c_construct->add_option("--a1", a1, "recurrence coefficient (nonzero)")
      ->required();
  c_construct->add_option("--n", n, "target residue count")->required();
  c_construct->add_flag("--nonzero", nonzero, "require all residues nonzero");
  c_construct->add_flag("--json", as_json, "emit JSON");
  add_budget(c_construct);

  std::string x0s = "0", x1s = "0", ms = "1", ps = "0";
  std::vector<std::uint64_t> class_mods;
  CLI::App* c_verify =
      app.add_subcommand("verify", "simulate an instance and report its orbit");
  c_verify->add_option("--a1", a1, "recurrence coefficient")->required();
  c_verify->add_option("--x0", x0s, "initial term")->required();
  c_verify->add_option("--x1", x1s, "next term")->required();
  c_verify->add_option("--m", ms, "modulus")->required();
  c_verify->add_option("--d", class_mods,
                       "also count residues per index class mod d");
  c_verify->add_flag("--json", as_json, "emit JSON");

  long a1_min = 1, a1_max = 5;
  std::uint64_t n_min = 1, n_max = 60;
  CLI::App* c_sweep =
      app.add_subcommand("sweep", "construct over a grid and re-verify");
  c_sweep->add_option("--a1-min", a1_min, "first a1")->required();
  c_sweep->add_option("--a1-max", a1_max, "last a1")->required();
  c_sweep->add_option("--n-min", n_min, "first target");
  c_sweep->add_option("--n-max", n_max, "last target")->required();
  c_sweep->add_flag("--nonzero", nonzero, "require all residues nonzero");
  add_budget(c_sweep);

  bool companion = false, high = false;
  CLI::App* c_lehmer =
      app.add_subcommand("lehmer", "divisibility-sequence term");
  c_lehmer->add_option("--a1", a1, "recurrence coefficient")->required();
  c_lehmer->add_option("--n", n, "index")->required();
  c_lehmer->add_flag("--companion", companion,
                     "companion term (odd index only)");

  CLI::App* c_primdiv =
      app.add_subcommand("primdiv", "primitive divisors of the n-th term");
  c_primdiv->add_option("--a1", a1, "recurrence coefficient")->required();
  c_primdiv->add_option("--n", n, "index (>= 3)")->required();
  c_primdiv->add_flag("--high", high,
                      "only the high divisor (p odd, p^val > n)");
  c_primdiv->add_flag("--json", as_json, "emit JSON");
  add_budget(c_primdiv);

  unsigned v = 1;
  CLI::App* c_order = app.add_subcommand(
      "order", "multiplicative orders of the roots mod p^v");
  c_order->add_option("--a1", a1, "recurrence coefficient")->required();
  c_order->add_option("--p", ps, "odd prime not dividing the discriminant")
      ->required();
  c_order->add_option("--v", v, "prime-power exponent");
  add_budget(c_order);

  std::uint64_t k = 1, horizon = 300;
  double eps = 1e-8;
  CLI::App* c_frac = app.add_subcommand(
      "frac", "limit points of the fractional orbit of xi*alpha^n");
  c_frac->add_option("--a1", a1, "recurrence coefficient (>= 1)")->required();
  c_frac->add_option("--k", k, "number of limit points")->required();
  c_frac->add_option("--N", horizon, "orbit horizon");
  c_frac->add_option("--eps", eps, "clustering tolerance");
  c_frac->add_flag("--json", as_json, "emit JSON");
  add_budget(c_frac);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  try {
    if (c_construct->parsed())
      return run_construct(a1, n, nonzero, as_json, budget());
    if (c_verify->parsed())
      return run_verify(a1, x0s, x1s, ms, class_mods, as_json);
    if (c_sweep->parsed())
      return run_sweep(a1_min, a1_max, n_min, n_max, nonzero, budget());
    if (c_lehmer->parsed()) return run_lehmer(a1, n, companion);
    if (c_primdiv->parsed())
      return run_primdiv(a1, n, high, as_json, budget());
    if (c_order->parsed()) return run_order(a1, ps, v, budget());
    if (c_frac->parsed())
      return run_frac(a1, k, horizon, eps, as_json, budget());
  } catch (const residua::Unrepresentable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const residua::ImpossibleNonzero& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const residua::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << " (index " << e.index << ")\n";
    return 3;
  } catch (const residua::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 4;
}
