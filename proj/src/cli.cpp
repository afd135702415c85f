#include "spbw/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spbw/catalog.hpp"
#include "spbw/dsl.hpp"
#include "spbw/engine.hpp"
#include "spbw/graded.hpp"
#include "spbw/invariants.hpp"

namespace spbw {

namespace {

// argument mistakes the parser cannot catch (unknown key, unreadable target)
struct UsageError {
  std::string msg;
};

struct Sink {
  std::ostream& out;
  bool records = false;

  // records mode: one key=value line; text mode: free-form
  void kv(const std::string& key, const std::string& value) {
    if (records) out << key << "=" << value << "\n";
  }
  void text(const std::string& line) {
    if (!records) out << line << "\n";
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_catalog_key(const std::string& s) {
  for (const auto& e : list_catalog())
    if (e.key == s) return true;
  return false;
}

ParamMap parse_params(const std::vector<std::string>& raw);

// a target names either a catalog entry or a definition file on disk
BuiltAlgebra load_target(const std::string& target, const std::vector<std::string>& raw_params) {
  if (is_catalog_key(target)) return instantiate(target, parse_params(raw_params));
  if (!raw_params.empty())
    throw UsageError{"--param applies to catalog keys, and '" + target + "' is a file"};
  if (std::filesystem::exists(target)) {
    try {
      return parse_definition(read_file(target));
    } catch (const ParseError& e) {
      throw Error(target + ": " + e.what());
    }
  }
  throw UsageError{"'" + target + "' is neither a catalog key nor a file"};
}

const char* severity_name(Severity s) {
  switch (s) {
    case Severity::error: return "error";
    case Severity::warning: return "warning";
    default: return "note";
  }
}

ParamMap parse_params(const std::vector<std::string>& raw) {
  ParamMap pm;
  for (const auto& kv : raw) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError{"--param expects name=value, got '" + kv + "'"};
    pm[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return pm;
}

Extent parse_extent(const std::string& s, const std::string& flag) {
  if (s == "inf" || s == "infinite") return Extent::infinite();
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size() || v < 0) throw std::invalid_argument(s);
    return Extent::finite(v);
  } catch (const std::exception&) {
    throw UsageError{flag + " expects a nonnegative integer or 'inf', got '" + s + "'"};
  }
}

// ------------------------------------------------------------------ check

int cmd_check(Sink& s, const std::string& target, const std::vector<std::string>& params,
              int degree_bound) {
  BuiltAlgebra a = load_target(target, params);
  ValidationReport rep = validate(a.pres);
  if (rep.ok) rep.merge(check_confluence(a.pres, degree_bound));

  s.kv("algebra", a.pres->name());
  s.kv("ok", rep.ok ? "true" : "false");
  s.kv("confluence_degree", std::to_string(rep.ok ? degree_bound : rep.confluence_degree));
  s.kv("findings", std::to_string(rep.findings.size()));
  s.text("algebra: " + a.pres->name());
  s.text("ring: " + a.pres->ring()->to_string());
  size_t idx = 0;
  for (const auto& f : rep.findings) {
    std::string sev = severity_name(f.severity);
    s.kv("finding." + std::to_string(idx) + ".severity", sev);
    s.kv("finding." + std::to_string(idx) + ".location", f.location);
    s.kv("finding." + std::to_string(idx) + ".message", f.message);
    s.text("[" + sev + "] " + f.location + ": " + f.message);
    ++idx;
  }
  if (rep.ok)
    s.text("ok: relations confluent through degree " + std::to_string(degree_bound));
  else
    s.text("failed");
  return rep.ok ? 0 : 1;
}

// ------------------------------------------------------------------- eval

int cmd_eval(Sink& s, const std::string& target, const std::vector<std::string>& params,
             const std::string& expr) {
  BuiltAlgebra a = load_target(target, params);
  SkewPoly v = parse_expr(expr, a.pres);
  s.kv("value", v.to_string());
  s.text(v.to_string());
  return 0;
}

// --------------------------------------------------------------------- gr

int cmd_gr(Sink& s, const std::string& target, const std::vector<std::string>& params) {
  BuiltAlgebra a = load_target(target, params);
  PresPtr g = assoc_algebra(a.pres);
  if (s.records) {
    s.kv("algebra", g->name());
    s.kv("ring", g->ring()->to_string());
    s.kv("nvars", std::to_string(g->nvars()));
    for (size_t i = 0; i < g->nvars(); ++i)
      for (size_t j = i + 1; j < g->nvars(); ++j)
        s.kv("c." + g->vars()[i] + "." + g->vars()[j], coeff_to_string(g->c(i, j)));
    return 0;
  }
  s.out << emit_definition({g, std::nullopt});
  return 0;
}

// ------------------------------------------------------------------ tower

std::string image_list(const TowerStep& st, const PresPtr& g) {
  std::string line;
  auto add = [&line](const std::string& k, const std::string& v) {
    if (!line.empty()) line += ", ";
    line += k + " -> " + v;
  };
  for (const auto& [gen, img] : st.theta_on_ring.images) add(gen, coeff_to_string(img));
  for (const auto& [i, c] : st.theta_on_vars) add(g->vars()[i], c.to_string() + "*" + g->vars()[i]);
  return line;
}

int cmd_tower(Sink& s, const std::string& target, const std::vector<std::string>& params) {
  BuiltAlgebra a = load_target(target, params);
  PresPtr g = a.pres;
  if (!g->quasi_commutative() || g->is_nested()) {
    g = assoc_algebra(g);
    s.text("# " + a.pres->name() + " is not quasi-commutative and flat; decomposing " +
           g->name());
    s.kv("via", g->name());
  }
  std::vector<TowerStep> steps = tower(g);
  s.kv("algebra", g->name());
  s.kv("base_ring", g->ring()->to_string());
  s.kv("steps", std::to_string(steps.size()));
  s.text(g->name() + " = " + g->ring()->to_string() + " extended by " +
         std::to_string(steps.size()) + " one-variable steps");
  for (const auto& st : steps) {
    const std::string& zv = g->vars()[st.index];
    std::string imgs = image_list(st, g);
    std::string head = "step " + std::to_string(st.index + 1) + " adjoins " + zv;
    if (imgs.empty())
      s.text(head + "; theta is the identity");
    else
      s.text(head + "; theta: " + imgs);
    std::string key = "step." + std::to_string(st.index + 1);
    s.kv(key + ".var", zv);
    for (const auto& [gen, img] : st.theta_on_ring.images)
      s.kv(key + ".theta." + gen, coeff_to_string(img));
    for (const auto& [i, c] : st.theta_on_vars) s.kv(key + ".theta." + g->vars()[i], c.to_string());
    bool inv = st.theta_on_vars_inverse.has_value();
    s.kv(key + ".invertible", inv ? "true" : "false");
    if (inv && !st.theta_on_vars_inverse->empty()) {
      std::string back;
      for (const auto& [i, c] : *st.theta_on_vars_inverse) {
        if (!back.empty()) back += ", ";
        back += g->vars()[i] + " -> " + c.to_string() + "*" + g->vars()[i];
      }
      s.text("  inverse: " + back);
    }
  }
  return 0;
}

// -------------------------------------------------------------------- ore

int cmd_ore(Sink& s, const std::string& target, const std::vector<std::string>& params,
            const std::string& fexpr, const std::string& sexpr) {
  BuiltAlgebra a = load_target(target, params);
  if (!a.quantum)
    throw Error("'" + a.pres->name() + "' has no localized variables; nothing to invert");
  const QuantumPresentation& qp = *a.quantum;
  SkewPoly f = parse_expr(fexpr, qp.core);
  SkewPoly den = parse_expr(sexpr, qp.core);
  if (den.nterms() != 1) throw Error("the denominator must be a single term r*x^alpha");
  auto [alpha, rc] = den.leading();
  RingElem r = rc.scalar;

  s.kv("s", den.to_string());
  s.text("s = " + den.to_string());
  try {
    SkewPoly inv = invert_term(qp, r, alpha);
    SkewPoly prod = qmul(qp, den, inv);
    if (!prod.eq(SkewPoly::constant(qp.core, coeff_one(*qp.core)))) throw Error("inverse check");
    s.kv("s_inverse", inv.to_string());
    s.text("s^-1 = " + inv.to_string());
  } catch (const Error&) {
    s.kv("s_inverse", "none");
    s.text("s^-1 = none (the denominator is not a unit of the localization)");
  }

  SkewPoly g = ore_left_witness(qp, f, r, alpha);
  SkewPoly h = ore_right_witness(qp, f, r, alpha);
  SkewPoly xa = SkewPoly::monomial(qp.core, coeff_one(*qp.core), alpha);
  bool left_ok = qmul(qp, g, den).eq(qmul(qp, xa, f));
  bool right_ok = qmul(qp, den, h).eq(qmul(qp, f, xa));
  s.kv("left_witness", g.to_string());
  s.kv("right_witness", h.to_string());
  s.kv("verified", left_ok && right_ok ? "true" : "false");
  s.text("left:  g = " + g.to_string());
  s.text("       with g*s = x^alpha*f " + std::string(left_ok ? "(checked)" : "(FAILED)"));
  s.text("right: h = " + h.to_string());
  s.text("       with s*h = f*x^alpha " + std::string(right_ok ? "(checked)" : "(FAILED)"));
  return left_ok && right_ok ? 0 : 1;
}

// ------------------------------------------------------------------- dims

int cmd_dims(Sink& s, const std::string& target, const std::vector<std::string>& params,
             const RingFacts& facts) {
  BuiltAlgebra a = load_target(target, params);
  DimReport rep = a.quantum ? dim_report(*a.quantum, facts) : dim_report(a.pres, facts);
  if (!s.records) {
    s.out << rep.to_string();
    return 0;
  }
  s.kv("algebra", a.pres->name());
  s.kv("nvars", std::to_string(rep.nvars));
  s.kv("lgld_lo", to_string(rep.lgld_lo));
  s.kv("lgld_hi", to_string(rep.lgld_hi));
  s.kv("lgld_exact", rep.lgld_exact ? "true" : "false");
  s.kv("lkdim_applicable", rep.lkdim_applicable ? "true" : "false");
  if (rep.lkdim_applicable) {
    s.kv("lkdim_lo", to_string(rep.lkdim_lo));
    s.kv("lkdim_hi", to_string(rep.lkdim_hi));
    s.kv("lkdim_exact", rep.lkdim_exact ? "true" : "false");
  }
  s.kv("udim", to_string(rep.udim));
  size_t idx = 0;
  for (const auto& n : rep.notes) s.kv("note." + std::to_string(idx++), n);
  return 0;
}

// ---------------------------------------------------------------- ktheory

int cmd_ktheory(Sink& s, int64_t m, int64_t r, const RingFacts& facts) {
  KExpr k = k_groups(facts, m, r);
  s.kv("k", k.to_string());
  for (const auto& [j, mult] : k.multiplicities)
    s.kv("mult." + std::to_string(j), std::to_string(mult));
  s.text(k.to_string());
  return 0;
}

// ---------------------------------------------------------------- catalog

int cmd_catalog_list(Sink& s) {
  const auto& entries = list_catalog();
  s.kv("count", std::to_string(entries.size()));
  size_t width = 0;
  for (const auto& e : entries) width = std::max(width, e.key.size());
  size_t idx = 0;
  for (const auto& e : entries) {
    std::string pad(width - e.key.size() + 2, ' ');
    s.text(e.key + pad + e.family);
    s.kv(std::to_string(idx) + ".key", e.key);
    s.kv(std::to_string(idx) + ".family", e.family);
    ++idx;
  }
  return 0;
}

const char* param_kind(ParamSpec::Kind k) {
  switch (k) {
    case ParamSpec::Kind::integer: return "integer";
    case ParamSpec::Kind::scalar: return "scalar";
    default: return "choice";
  }
}

int cmd_catalog_show(Sink& s, const std::string& key) {
  if (!is_catalog_key(key)) throw UsageError{"unknown catalog key '" + key + "'"};
  const CatalogEntry& e = catalog_entry(key);
  s.kv("key", e.key);
  s.kv("family", e.family);
  s.text("key:    " + e.key);
  s.text("family: " + e.family);
  if (!e.params.empty()) s.text("parameters:");
  size_t idx = 0;
  for (const auto& p : e.params) {
    std::string head = "param." + std::to_string(idx++);
    s.kv(head + ".name", p.name);
    s.kv(head + ".kind", param_kind(p.kind));
    s.kv(head + ".default", p.fallback);
    s.kv(head + ".constraint", p.constraint);
    s.text("  " + p.name + "  (" + param_kind(p.kind) + ", default " + p.fallback +
           (p.constraint.empty() ? "" : ", " + p.constraint) + ")");
  }
  idx = 0;
  for (const auto& n : e.notes) {
    s.kv("note." + std::to_string(idx++), n);
    s.text("note: " + n);
  }
  return 0;
}

int cmd_catalog_build(std::ostream& out, const std::string& key,
                      const std::vector<std::string>& raw_params, const std::string& out_path) {
  if (!is_catalog_key(key)) throw UsageError{"unknown catalog key '" + key + "'"};
  std::string doc = emit_definition(instantiate(key, parse_params(raw_params)));
  if (out_path.empty()) {
    out << doc;
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error("cannot write '" + out_path + "'");
  f << doc;
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact arithmetic for skew Poincare-Birkhoff-Witt extensions"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "records"}))
      ->capture_default_str();

  std::string target, expr, fexpr, sexpr, out_path, key;
  int degree_bound = 4;
  int64_t km = 0, kr = 0;
  std::vector<std::string> raw_params;
  std::string lgld_s, lkdim_s;
  RingFacts facts;

  auto add_target = [&](CLI::App* c) {
    c->add_option("target", target, "catalog key or .spbw file")->required();
    c->add_option("--param", raw_params, "catalog parameter as name=value (repeatable)");
  };

  CLI::App* check = app.add_subcommand("check", "validate a definition and probe confluence");
  add_target(check);
  check->add_option("--degree-bound", degree_bound, "confluence search depth (at least 3)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  CLI::App* eval = app.add_subcommand("eval", "normalize an expression");
  add_target(eval);
  eval->add_option("-e,--expr", expr, "expression to evaluate")->required();

  CLI::App* gr = app.add_subcommand("gr", "associated quasi-commutative extension");
  add_target(gr);

  CLI::App* tw = app.add_subcommand("tower", "iterated one-variable decomposition");
  add_target(tw);

  CLI::App* ore = app.add_subcommand("ore", "Ore witnesses against a denominator term");
  add_target(ore);
  ore->add_option("-f,--numerator", fexpr, "left/right numerator")->required();
  ore->add_option("-s,--denominator", sexpr, "single-term denominator r*x^alpha")->required();

  auto add_fact_flags = [&](CLI::App* c) {
    c->add_flag("--noetherian", facts.is_noetherian, "coefficients are left noetherian");
    c->add_flag("--domain", facts.is_domain, "coefficients form a domain");
    c->add_flag("--semisimple", facts.is_semisimple, "coefficients are semisimple artinian");
    c->add_flag("--field", facts.is_field, "coefficients form a field");
    c->add_flag("--regular", facts.is_regular, "coefficients are regular");
    c->add_flag("--psf", facts.is_psf, "f.g. projectives are stably free");
    c->add_flag("--trivial-k-action", facts.k_trivial_action,
                "automorphisms act trivially on K-theory");
    c->add_option("--lgld", lgld_s, "declared left global dimension (integer or inf)");
    c->add_option("--lkdim", lkdim_s, "declared left Krull dimension (integer or inf)");
  };

  CLI::App* dims = app.add_subcommand("dims", "dimension bounds from declared facts");
  add_target(dims);
  add_fact_flags(dims);

  CLI::App* kth = app.add_subcommand("ktheory", "K-group decomposition of the localized ring");
  kth->add_option("--m", km, "K-theory degree")->required()->check(CLI::NonNegativeNumber);
  kth->add_option("--r", kr, "number of inverted variables")
      ->required()
      ->check(CLI::NonNegativeNumber);
  add_fact_flags(kth);

  CLI::App* cat = app.add_subcommand("catalog", "browse the built-in families");
  cat->require_subcommand(1);
  cat->add_subcommand("list", "one line per entry");
  CLI::App* cat_show = cat->add_subcommand("show", "entry details");
  cat_show->add_option("key", key, "catalog key")->required();
  CLI::App* cat_build = cat->add_subcommand("build", "emit a definition file");
  cat_build->add_option("key", key, "catalog key")->required();
  cat_build->add_option("--param", raw_params, "parameter as name=value (repeatable)");
  cat_build->add_option("-o,--output", out_path, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  Sink sink{out, format == "records"};
  try {
    if (!lgld_s.empty()) facts.lgld = parse_extent(lgld_s, "--lgld");
    if (!lkdim_s.empty()) facts.lkdim = parse_extent(lkdim_s, "--lkdim");
    if (dims->parsed() || kth->parsed()) facts = normalize_facts(facts);

    if (check->parsed()) return cmd_check(sink, target, raw_params, degree_bound);
    if (eval->parsed()) return cmd_eval(sink, target, raw_params, expr);
    if (gr->parsed()) return cmd_gr(sink, target, raw_params);
    if (tw->parsed()) return cmd_tower(sink, target, raw_params);
    if (ore->parsed()) return cmd_ore(sink, target, raw_params, fexpr, sexpr);
    if (dims->parsed()) return cmd_dims(sink, target, raw_params, facts);
    if (kth->parsed()) return cmd_ktheory(sink, km, kr, facts);
    if (cat->parsed()) {
      if (cat->get_subcommand("list")->parsed()) return cmd_catalog_list(sink);
      if (cat_show->parsed()) return cmd_catalog_show(sink, key);
      if (cat_build->parsed()) return cmd_catalog_build(out, key, raw_params, out_path);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.msg << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;  // unreachable subcommand wiring
}

}  // namespace spbw
