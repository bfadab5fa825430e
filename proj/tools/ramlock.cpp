#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ramlock/bounds.hpp"
#include "ramlock/selftest.hpp"
#include "ramlock/tower.hpp"

using namespace ramlock;

namespace {

struct Options {
  std::string field_path;
  std::vector<std::string> curve_paths;
  std::string module_path;
  int nmax = 3;
  int mcap = 6;
  std::optional<int> prec;
  std::optional<int> dmax;
  bool json = false;
  u64 seed = 0;
  bool strict = false;
  bool abstract = false;
  std::optional<u64> p;
  int g = 1;
  int N = 0;
  int Mur = 0;
  int mmax = 2;
  std::string suite = "all";
  bool inject_fault = false;
};

int exit_code(ErrorKind k, bool strict) {
  switch (k) {
    case ErrorKind::CapReached:
      return strict ? 2 : 3;
    case ErrorKind::DegreeCapExceeded:
    case ErrorKind::PrecisionExhausted:
    case ErrorKind::ResidueFieldTooLarge:
    case ErrorKind::Unstabilized:
      return 3;
    case ErrorKind::Internal:
      return 4;
    default:
      break;
  }
  return k < ErrorKind::HypothesisViolated ? 1 : 2;
}

BoundCaps caps_of(const Options& o) {
  require(o.nmax >= 1 && o.mcap >= 1, ErrorKind::InvalidArgument, "caps must be positive");
  BoundCaps c;
  c.n_cap = o.nmax;
  c.m_cap = o.mcap;
  c.strict = o.strict;
  if (o.dmax) {
    require(*o.dmax >= 1, ErrorKind::InvalidArgument, "degree cap must be positive");
    c.degree_cap = *o.dmax;
  }
  return c;
}

Json load(const std::string& path) { return parse_document(read_file(path)); }

Json field_doc(const Options& o) {
  require(!o.field_path.empty(), ErrorKind::InvalidArgument, "--field is required");
  Json j = load(o.field_path);
  if (j.contains("field")) j = j["field"];
  if (o.prec) j["prec"] = *o.prec;
  return j;
}

std::optional<LocalField> load_field(const Options& o) {
  if (o.field_path.empty()) return std::nullopt;
  return field_from_json(field_doc(o));
}

WeierstrassCurve load_curve(const Options& o, const std::string& path) {
  Json j = load(path);
  if (!j.contains("field")) {
    require(!o.field_path.empty(), ErrorKind::InvalidArgument, "curve descriptor has no field and --field is missing");
    j["field"] = field_doc(o);
  } else {
    if (o.prec) j["field"]["prec"] = *o.prec;
    if (!o.field_path.empty())
      require(field_to_json(field_from_json(j["field"])) == field_to_json(field_from_json(field_doc(o))),
              ErrorKind::FieldMismatch, "curve descriptor field differs from --field");
  }
  return curve_from_json(j).curve;
}

std::vector<WeierstrassCurve> load_curves(const Options& o) {
  std::vector<WeierstrassCurve> out;
  for (const auto& p : o.curve_paths) out.push_back(load_curve(o, p));
  return out;
}

void emit_json(const std::string& command, const Options& o, const std::string& key, const Json& body) {
  Json out;
  out["command"] = command;
  out["seed"] = o.seed;
  out[key] = body;
  std::cout << out.dump(2) << "\n";
}

void print_report(const BoundReport& r, bool with_bounds, const Options& o) {
  std::cout << "p: " << r.p << "\n";
  if (r.reduction != "user-supplied") {
    std::cout << "e: " << r.e << "\nf: " << r.f << "\ne0: " << r.e0.str() << "\n";
    std::cout << "R: " << r.R.r_leq << " (strict " << r.R.r_strict << ")\n";
  }
  std::cout << "M: " << r.M << "\nM^ur: " << r.Mur << "\n";
  if (!r.reduction.empty()) {
    std::cout << "reduction: " << r.reduction << "\ng: " << r.g << "\n";
    std::cout << "N: " << r.N << "\nN-hat: " << r.Nhat << "\n";
    if (r.reduction == "GoodSupersingular")
      std::cout << "t0: " << (r.t0 ? std::to_string(*r.t0) : std::string("undefined")) << "\n";
  }
  if (with_bounds) {
    std::cout << "lower: " << r.lower.str() << "\nupper: " << r.upper.str() << "\n";
    std::cout << "exact: " << (r.exact ? r.exact->str() + " (" + r.exact_case + ")" : std::string("undetermined"))
              << "\n";
    if (r.climb_level) std::cout << "climb level: " << *r.climb_level << "\n";
  }
  for (const auto& c : r.caveats) std::cout << "caveat: " << c << "\n";
  std::cout << "seed: " << o.seed << "\n";
}

int cmd_invariants(const Options& o) {
  const BoundCaps caps = caps_of(o);
  const auto curves = load_curves(o);
  require(curves.size() <= 1, ErrorKind::InvalidArgument, "invariants takes at most one curve");
  BoundReport r;
  if (curves.empty()) {
    const auto k = load_field(o);
    require(k.has_value(), ErrorKind::InvalidArgument, "--field is required");
    r = field_report(*k, caps);
  } else {
    r = invariants_report(curves.front(), caps);
  }
  if (o.json)
    emit_json("invariants", o, "report", r.to_json());
  else
    print_report(r, false, o);
  return 0;
}

int cmd_bounds(const Options& o) {
  const BoundCaps caps = caps_of(o);
  BoundReport r;
  if (o.abstract) {
    require(o.curve_paths.empty(), ErrorKind::InvalidArgument, "--abstract takes no curve");
    u64 p = 0;
    if (const auto k = load_field(o)) p = k->p();
    if (o.p) {
      require(p == 0 || p == *o.p, ErrorKind::FieldMismatch, "--p differs from the field's prime");
      p = *o.p;
    }
    require(p != 0, ErrorKind::InvalidArgument, "--abstract needs --field or --p");
    r = abstract_bounds(p, o.g, o.N, o.Mur);
  } else {
    const auto curves = load_curves(o);
    require(!curves.empty(), ErrorKind::InvalidArgument, "bounds needs --curve (or --abstract)");
    std::vector<BoundReport> reports;
    for (const auto& e : curves) reports.push_back(curve_bounds(e, caps));
    r = product_aggregate(reports);
  }
  if (o.json)
    emit_json("bounds", o, "report", r.to_json());
  else
    print_report(r, true, o);
  return 0;
}

int cmd_hilbert_table(const Options& o) {
  const auto k = load_field(o);
  require(k.has_value(), ErrorKind::InvalidArgument, "--field is required");
  const HilbertPairing h = HilbertPairing::build(*k, caps_of(o).degree_cap);
  const int p = static_cast<int>(k->p());
  require(k->e() % (p - 1) == 0, ErrorKind::Internal, "mu_p in k forces (p - 1) | e_k");
  const int pe0 = p * k->e() / (p - 1);
  Json entries = Json::array();
  for (int i = 1; i <= pe0; ++i)
    for (int j = 1; j <= pe0; ++j) {
      if (i % p == 0 && j % p == 0) continue;
      const PairingOrder ord = filtration_pairing_order(h, i, j);
      entries.push_back(Json{{"i", i}, {"j", j}, {"computed", ord.computed}, {"formula", ord.formula}});
    }
  if (o.json) {
    emit_json("hilbert-table", o, "table",
              Json{{"field", field_to_json(*k)}, {"pe0", pe0}, {"orders", entries}, {"pairing", h.to_json()}});
    return 0;
  }
  std::cout << "p e0: " << pe0 << "\n";
  for (const auto& en : entries)
    std::cout << "i=" << en["i"].get<int>() << " j=" << en["j"].get<int>() << " order=" << en["computed"].get<u64>()
              << " formula=" << en["formula"].get<u64>() << "\n";
  std::cout << "seed: " << o.seed << "\n";
  return 0;
}

int cmd_coinv(const Options& o) {
  require(!o.module_path.empty(), ErrorKind::InvalidArgument, "coinv needs --module");
  const FiniteGaloisModule m = FiniteGaloisModule::from_json(load(o.module_path));
  const AbGroupStructure co = coinvariants(m), inv = invariants_sub(m);
  std::optional<AbGroupStructure> brute;
  if (ipow(m.p, m.log_order()) <= kExhaustiveLimit) brute = exhaustive_coinvariants(m);
  require(!brute || *brute == co, ErrorKind::Internal, "coinvariants disagree with enumeration");
  if (o.json) {
    emit_json("coinv", o, "result",
              Json{{"module", m.to_json()}, {"structure", m.structure().to_json()}, {"coinvariants", co.to_json()},
                   {"invariants", inv.to_json()}, {"enumeration_checked", brute.has_value()}});
    return 0;
  }
  std::cout << "module: " << m.structure().str() << "\ncoinvariants: " << co.str() << "\ninvariants: " << inv.str()
            << "\nenumeration checked: " << (brute ? "yes" : "no") << "\nseed: " << o.seed << "\n";
  return 0;
}

int cmd_ozeki(const Options& o) {
  const auto curves = load_curves(o);
  require(curves.size() == 1, ErrorKind::InvalidArgument, "ozeki needs exactly one --curve");
  const OzekiReport r = ozeki_tower(curves.front(), o.mmax, caps_of(o));
  if (o.json) {
    emit_json("ozeki", o, "tower", r.to_json());
    return 0;
  }
  std::cout << "m degree M N gap\n";
  for (const auto& l : r.levels)
    std::cout << l.m << " " << l.degree << " " << l.M << " " << l.N << " " << l.gap << "\n";
  if (!r.complete) std::cout << "stopped: " << r.stopped << "\n";
  for (const auto& c : r.caveats) std::cout << "caveat: " << c << "\n";
  std::cout << "seed: " << o.seed << "\n";
  return 0;
}

int cmd_selftest(const Options& o) {
  SelftestOptions so;
  so.seed = o.seed;
  so.inject_fault = o.inject_fault;
  const SelftestReport rep = run_selftest(expand_suite(o.suite), so);
  if (o.json) {
    emit_json("selftest", o, "selftest", rep.to_json());
  } else {
    for (const auto& s : rep.suites)
      std::cout << s.name << ": " << s.passed << "/" << s.checked << (s.ok() ? " passed" : " FAILED") << "\n";
    std::cout << "seed: " << o.seed << "\n";
  }
  for (const auto& s : rep.suites)
    if (!s.ok()) {
      std::cerr << "selftest failed: " << s.name << ": " << s.first_failure << "\n";
      if (s.counterexample) std::cerr << "counterexample: " << s.counterexample->dump() << "\n";
      return 1;
    }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ramlock: ramification bounds for curves over p-adic fields"};
  app.require_subcommand(1, 1);
  Options o;

  const auto add_common = [&](CLI::App* c) {
    c->add_option("--field", o.field_path, "field descriptor (TOML or JSON)");
    c->add_option("--prec", o.prec, "override the descriptor precision");
    c->add_option("--dmax", o.dmax, "degree cap for constructed fields (default RAMLOCK_DEGREE_CAP or 16)");
    c->add_flag("--json", o.json, "JSON output");
    c->add_option("--seed", o.seed, "random seed, embedded in the output");
    c->add_flag("--strict", o.strict, "treat a capped search as an error");
  };
  const auto add_caps = [&](CLI::App* c) {
    c->add_option("--nmax", o.nmax, "search limit for N and N-hat");
    c->add_option("--mcap", o.mcap, "search limit for M and M^ur");
  };

  auto* inv = app.add_subcommand("invariants", "M, M^ur, e0, R and curve invariants");
  add_common(inv);
  add_caps(inv);
  inv->add_option("--curve", o.curve_paths, "curve descriptor");

  auto* bnd = app.add_subcommand("bounds", "sandwich bounds for the ramified part");
  add_common(bnd);
  add_caps(bnd);
  bnd->add_option("--curve", o.curve_paths, "curve descriptor; repeat for a product of curves");
  bnd->add_flag("--abstract", o.abstract, "use user-supplied g, N, Mur");
  bnd->add_option("--p", o.p, "prime for --abstract without --field");
  bnd->add_option("--g", o.g, "dimension (--abstract)");
  bnd->add_option("--N", o.N, "torsion level (--abstract)");
  bnd->add_option("--Mur", o.Mur, "M^ur (--abstract)");

  auto* hil = app.add_subcommand("hilbert-table", "pairing orders of the unit filtration");
  add_common(hil);

  auto* coi = app.add_subcommand("coinv", "coinvariants of a finite Galois module");
  add_common(coi);
  coi->add_option("--module", o.module_path, "module descriptor")->required();

  auto* oz = app.add_subcommand("ozeki", "M - N along the cyclotomic tower");
  add_common(oz);
  add_caps(oz);
  oz->add_option("--curve", o.curve_paths, "curve descriptor");
  oz->add_option("--mmax", o.mmax, "highest tower level");

  auto* st = app.add_subcommand("selftest", "oracle property suites");
  add_common(st);
  st->add_option("--suite", o.suite, "suite or group: all, hilbert, galmod, curves, or a suite name");
  st->add_flag("--inject-fault", o.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*inv) return cmd_invariants(o);
    if (*bnd) return cmd_bounds(o);
    if (*hil) return cmd_hilbert_table(o);
    if (*coi) return cmd_coinv(o);
    if (*oz) return cmd_ozeki(o);
    return cmd_selftest(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind(), o.strict);
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 4;
  }
}
