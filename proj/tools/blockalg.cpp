#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blockalg/derivations.hpp"
#include "blockalg/error.hpp"
#include "blockalg/harness.hpp"
#include "blockalg/isomorphism.hpp"
#include "blockalg/literal.hpp"
#include "blockalg/spec_file.hpp"

using namespace blockalg;

namespace {

struct Options {
  std::string spec_path;
  std::string target_path;
  std::optional<std::uint64_t> seed;
  std::uint64_t trials = 0;
  int K = 2;
  int L = 3;
  int depth = 6;
  bool permissive_zero = false;
  bool timing = false;
  std::string out;
  std::string der;
  std::string group = "G1";
  std::string a = "1";
  std::string b = "0";
  std::string suite;
  std::vector<std::string> elements;
};

BracketFn suite_bracket() {
#ifdef BLOCKALG_CORRUPT_BRACKET
  // Test build only: perturb every nonzero bracket so the suites must fail.
  return [](const Element& u, const Element& v) {
    Element r = bracket(u, v);
    if (!r.is_zero()) r.emit(r.terms().begin()->first, Rat(1));
    return r;
  };
#else
  return bracket;
#endif
}

SpecPtr need_spec(const Options& o) {
  if (o.spec_path.empty()) throw CLI::RequiredError("--spec");
  return load_spec_file(o.spec_path);
}

std::uint64_t need_seed(const Options& o) {
  if (!o.seed) throw CLI::RequiredError("--seed");
  return *o.seed;
}

std::uint64_t or_default(std::uint64_t v, std::uint64_t d) { return v == 0 ? d : v; }

int run_check(const Options& o) {
  const std::uint64_t seed = need_seed(o);
  const WindowConfig window{o.K, o.L};
  SuiteReport report;
  const std::string& s = o.suite;
  if (s == "jacobi") {
    report = suite_jacobi(need_spec(o), window, or_default(o.trials, 1000), seed, suite_bracket());
  } else if (s == "bracket") {
    ConsistencyConfig cfg;
    cfg.pairs = or_default(o.trials, cfg.pairs);
    report = suite_bracket_consistency(need_spec(o), window, cfg, seed, suite_bracket());
  } else if (s == "derivations") {
    report = suite_derivations(need_spec(o), window, or_default(o.trials, 500), seed);
  } else if (s == "iso") {
    IsoConfig cfg;
    cfg.maps = or_default(o.trials, cfg.maps);
    report = suite_iso(need_spec(o), cfg, seed);
  } else if (s == "moduli") {
    const std::uint64_t n = or_default(o.trials, 200);
    report = suite_moduli(n, 20, n, seed);
  } else if (s == "decide") {
    report = suite_decide(or_default(o.trials, 200), seed);
  } else if (s == "locality") {
    report = suite_locality(need_spec(o), window, o.depth, seed);
  } else if (s == "simplicity") {
    report = suite_simplicity(need_spec(o), window, o.depth, or_default(o.trials, 10), seed);
  } else {
    std::cerr << "error: unknown suite '" << s
              << "' (jacobi, bracket, derivations, iso, moduli, decide, locality, simplicity)\n";
    return 2;
  }
  std::cout << report.to_text(o.timing);
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + o.out);
    f << report.to_json(o.timing).dump(2) << "\n";
  }
  return report.ok() ? 0 : 1;
}

int run_iso(const std::string& mode, const Options& o) {
  const SpecPtr source = need_spec(o);
  if (mode == "key") {
    std::cout << moduli_key(*source).to_string() << "\n";
    return 0;
  }
  if (mode == "decide") {
    if (o.target_path.empty()) throw CLI::RequiredError("--target");
    const IsoVerdict v = decide_iso(*source, *load_spec_file(o.target_path));
    std::cout << v.to_json() << "\n";
    return v.found ? 0 : 1;
  }
  // apply
  const IsoParams params{parse_rat(o.a), parse_rat(o.b)};
  if (sgn(params.a) == 0) throw Error(ErrorCode::InvalidArgument, "--a must be nonzero");
  const SpecPtr target = o.target_path.empty() ? spec_validate(map_lattice(params, source->gamma), source->j)
                                               : load_spec_file(o.target_path);
  if (o.elements.size() != 1) throw CLI::ValidationError("iso apply", "expects one element literal");
  std::cout << to_literal(psi_apply(params, target, parse_element(source, o.elements[0]))) << "\n";
  return 0;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--spec", o.spec_path, "algebra spec file (JSON)");
  cmd->add_option("--seed", o.seed, "random seed (required by randomized commands)");
  cmd->add_option("--trials", o.trials, "trial count (0: suite default)");
  cmd->add_option("--K", o.K, "window radius in lattice coordinates");
  cmd->add_option("--L", o.L, "window level bound");
  cmd->add_option("--depth", o.depth, "probe depth / iteration cap");
  cmd->add_flag("--permissive-zero", o.permissive_zero, "undefined named derivations act as 0");
  cmd->add_option("--out", o.out, "write a JSON report to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic for generalized Block Lie algebras B(Gamma, J)"};
  app.require_subcommand(1);
  Options o;

  auto* br = app.add_subcommand("bracket", "print [u, v]");
  add_common(br, o);
  br->add_option("elements", o.elements, "two element literals")->expected(2)->required();

  auto* der = app.add_subcommand("apply-der", "apply a derivation to an element");
  add_common(der, o);
  der->add_option("--der", o.der, "derivation expression")->required();
  der->add_option("element", o.elements, "element literal")->expected(1)->required();

  auto* iso = app.add_subcommand("iso", "isomorphism decision, map and moduli key");
  iso->require_subcommand(1);
  std::string iso_mode;
  for (const char* m : {"decide", "apply", "key"}) {
    auto* sub = iso->add_subcommand(m);
    add_common(sub, o);
    sub->add_option("--target", o.target_path, "second spec file");
    if (std::string(m) == "apply") {
      sub->add_option("--a", o.a, "scale a (nonzero rational)");
      sub->add_option("--b", o.b, "shear b (rational)");
      sub->add_option("element", o.elements, "element literal")->expected(1)->required();
    }
    sub->callback([&iso_mode, m] { iso_mode = m; });
  }

  auto* check = app.add_subcommand("check", "run a verification suite");
  add_common(check, o);
  check->add_option("suite", o.suite, "suite name")->required();
  check->add_flag("--timing", o.timing, "include wall time in the report");

  auto* canon = app.add_subcommand("canon", "canonical orbit descriptor of Gamma");
  add_common(canon, o);
  canon->add_option("--group", o.group, "G1 or G2")->check(CLI::IsMember({"G1", "G2"}));

  auto* enumerate = app.add_subcommand("enumerate", "list the basis indices of the (K, L) window");
  add_common(enumerate, o);

  auto* red = app.add_subcommand("reduce", "print an element after the quotient reduction");
  add_common(red, o);
  red->add_option("element", o.elements, "element literal")->expected(1)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*br) {
      const SpecPtr spec = need_spec(o);
      std::cout << to_literal(bracket(parse_element(spec, o.elements[0]), parse_element(spec, o.elements[1])))
                << "\n";
    } else if (*der) {
      const SpecPtr spec = need_spec(o);
      const Derivation d = parse_derivation(spec, o.der, o.permissive_zero);
      std::cout << to_literal(apply(d, parse_element(spec, o.elements[0]))) << "\n";
    } else if (*iso) {
      return run_iso(iso_mode, o);
    } else if (*check) {
      return run_check(o);
    } else if (*canon) {
      const SpecPtr spec = need_spec(o);
      std::cout << canonical_form(spec->gamma, o.group == "G2" ? ShearGroup::G2 : ShearGroup::G1).to_string()
                << "\n";
    } else if (*enumerate) {
      for (const auto& b : enumerate_window(*need_spec(o), o.K, o.L)) std::cout << b.to_string() << "\n";
    } else if (*red) {
      std::cout << to_literal(parse_element(need_spec(o), o.elements[0])) << "\n";
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
