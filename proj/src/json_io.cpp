#include "residua/json_io.hpp"

#include <string>

namespace residua {
namespace {

using nlohmann::json;

std::string dec(const Int& n) { return n.get_str(); }

std::string dec(const mpq_class& q) { return q.get_str(); }

Int parse_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string())
    throw InputError(std::string("certificate json: missing string field ") +
                     key);
  const std::string s = j[key].get<std::string>();
  Int n;
  if (s.empty() || mpz_set_str(n.get_mpz_t(), s.c_str(), 10) != 0)
    throw InputError(std::string("certificate json: bad integer in ") + key);
  return n;
}

template <typename T>
T parse_num(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw InputError(std::string("certificate json: missing number field ") +
                     key);
  return j[key].get<T>();
}

json path_to_json(const ConstructionPath& p);

struct PathWriter {
  json operator()(const path::Trivial1&) const { return {{"tag", "trivial1"}}; }
  json operator()(const path::Parity2&) const { return {{"tag", "parity2"}}; }
  json operator()(const path::NonzeroSmall& p) const {
    return {{"tag", "nonzero_small"}, {"n", p.n}};
  }
  json operator()(const path::TableRef& p) const {
    return {{"tag", "table"}, {"row", p.row}};
  }
  json operator()(const path::N4& p) const {
    const char* branch = p.branch == path::N4Branch::odd_a1 ? "odd"
                         : p.branch == path::N4Branch::even_a1 ? "even"
                                                               : "table";
    return {{"tag", "n4"}, {"branch", branch}};
  }
  json operator()(const path::OddPrimitive& p) const {
    return {{"tag", "odd_primitive"},
            {"index", p.index},
            {"p", dec(p.p)},
            {"root", dec(p.root)},
            {"order", p.order}};
  }
  json operator()(const path::EvenSplit& p) const {
    return {{"tag", "even_split"}, {"index", p.index}, {"p", dec(p.p)}};
  }
  json operator()(const path::EvenInertCombine& p) const {
    return {{"tag", "even_inert_combine"},
            {"index", p.index},
            {"p", dec(p.p)},
            {"v", p.v},
            {"c", dec(p.c)},
            {"m2", dec(p.m2)},
            {"d", p.d}};
  }
  json operator()(const path::Reversed& p) const {
    return {{"tag", "reversed"}, {"inner", path_to_json(*p.inner)}};
  }
};

json path_to_json(const ConstructionPath& p) {
  return std::visit(PathWriter{}, p.alt);
}

ConstructionPath path_from_json(const json& j) {
  if (!j.is_object() || !j.contains("tag") || !j["tag"].is_string())
    throw InputError("certificate json: path needs a tag");
  const std::string tag = j["tag"].get<std::string>();
  if (tag == "trivial1") return {path::Trivial1{}};
  if (tag == "parity2") return {path::Parity2{}};
  if (tag == "nonzero_small")
    return {path::NonzeroSmall{parse_num<std::uint64_t>(j, "n")}};
  if (tag == "table") return {path::TableRef{parse_num<int>(j, "row")}};
  if (tag == "n4") {
    const std::string b = j.value("branch", std::string());
    path::N4Branch branch;
    if (b == "odd")
      branch = path::N4Branch::odd_a1;
    else if (b == "even")
      branch = path::N4Branch::even_a1;
    else if (b == "table")
      branch = path::N4Branch::table;
    else
      throw InputError("certificate json: bad n4 branch");
    return {path::N4{branch}};
  }
  if (tag == "odd_primitive")
    return {path::OddPrimitive{parse_num<std::uint64_t>(j, "index"),
                               parse_int(j, "p"), parse_int(j, "root"),
                               parse_num<std::uint64_t>(j, "order")}};
  if (tag == "even_split")
    return {path::EvenSplit{parse_num<std::uint64_t>(j, "index"),
                            parse_int(j, "p")}};
  if (tag == "even_inert_combine")
    return {path::EvenInertCombine{
        parse_num<std::uint64_t>(j, "index"), parse_int(j, "p"),
        parse_num<unsigned>(j, "v"), parse_int(j, "c"), parse_int(j, "m2"),
        parse_num<std::uint64_t>(j, "d")}};
  if (tag == "reversed") {
    if (!j.contains("inner"))
      throw InputError("certificate json: reversed path needs inner");
    return {path::Reversed{std::make_shared<const ConstructionPath>(
        path_from_json(j["inner"]))}};
  }
  throw InputError("certificate json: unknown path tag " + tag);
}

}  // namespace

json to_json(const Certificate& cert) {
  json residues = json::array();
  for (const Int& r : cert.residues) residues.push_back(dec(r));
  return {{"schema", 1},
          {"a1", cert.a1},
          {"target", cert.target},
          {"m", dec(cert.m)},
          {"x0", dec(cert.x0)},
          {"x1", dec(cert.x1)},
          {"tau", cert.tau},
          {"residues", std::move(residues)},
          {"nonzero", cert.nonzero},
          {"path", path_to_json(cert.path)},
          {"verified", cert.verified}};
}

Certificate certificate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("schema") ||
      !j["schema"].is_number_integer() || j["schema"].get<int>() != 1)
    throw InputError("certificate json: unsupported schema");
  Certificate cert;
  cert.a1 = parse_num<long>(j, "a1");
  cert.target = parse_num<std::uint64_t>(j, "target");
  cert.m = parse_int(j, "m");
  cert.x0 = parse_int(j, "x0");
  cert.x1 = parse_int(j, "x1");
  cert.tau = parse_num<std::uint64_t>(j, "tau");
  if (!j.contains("residues") || !j["residues"].is_array())
    throw InputError("certificate json: missing residues");
  for (const json& r : j["residues"]) {
    Int n;
    const std::string s = r.is_string() ? r.get<std::string>() : std::string();
    if (s.empty() || mpz_set_str(n.get_mpz_t(), s.c_str(), 10) != 0)
      throw InputError("certificate json: bad residue entry");
    cert.residues.push_back(std::move(n));
  }
  if (!j.contains("nonzero") || !j["nonzero"].is_boolean() ||
      !j.contains("verified") || !j["verified"].is_boolean())
    throw InputError("certificate json: missing boolean flags");
  cert.nonzero = j["nonzero"].get<bool>();
  cert.verified = j["verified"].get<bool>();
  if (!j.contains("path"))
    throw InputError("certificate json: missing path");
  cert.path = path_from_json(j["path"]);
  return cert;
}

json to_json(const OrbitStats& stats) {
  json residues = json::array();
  for (const Int& r : stats.residues) residues.push_back(dec(r));
  json classes = json::object();
  for (const auto& [key, count] : stats.class_rho) {
    const auto& [d, r] = key;
    classes[std::to_string(d) + ":" + std::to_string(r)] = count;
  }
  return {{"m", dec(stats.m)},
          {"tau", stats.tau},
          {"rho", stats.rho},
          {"residues", std::move(residues)},
          {"nonzero", stats.nonzero},
          {"class_rho", std::move(classes)}};
}

json to_json(const LimitReport& rep) {
  json predicted = json::array();
  for (const mpq_class& q : rep.predicted) predicted.push_back(dec(q));
  json clusters = json::array();
  for (const Cluster& cl : rep.clusters)
    clusters.push_back({{"value", dec(cl.value)},
                        {"count", cl.count},
                        {"max_deviation", dec(cl.max_deviation)}});
  return {{"xi",
           {{"unit", dec(rep.xi.num.unit())},
            {"alpha", dec(rep.xi.num.alpha_coeff())},
            {"den", dec(rep.xi.den)}}},
          {"k", rep.k},
          {"predicted", std::move(predicted)},
          {"clusters", std::move(clusters)},
          {"pass", rep.pass},
          {"n0", rep.n0},
          {"conclusive", rep.conclusive}};
}

}  // namespace residua
