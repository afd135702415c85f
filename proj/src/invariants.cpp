#include "spbw/invariants.hpp"

#include <gmpxx.h>

namespace spbw {

std::string to_string(const Extent& e) {
  switch (e.kind) {
    case Extent::Kind::finite:
      return std::to_string(e.value);
    case Extent::Kind::infinite:
      return "infinity";
    default:
      return "unknown";
  }
}

RingFacts normalize_facts(const RingFacts& in) {
  RingFacts f = in;
  if (f.is_field) {
    f.is_semisimple = true;
    f.is_domain = true;
    f.is_regular = true;
    f.is_psf = true;
    if (f.lkdim.is_unknown())
      f.lkdim = Extent::finite(0);
    else if (f.lkdim != Extent::finite(0))
      throw Error("declared lkdim contradicts the field flag");
  }
  if (f.is_semisimple) {
    f.is_noetherian = true;
    if (f.lgld.is_unknown())
      f.lgld = Extent::finite(0);
    else if (f.lgld != Extent::finite(0))
      throw Error("declared lgld contradicts the semisimple flag");
  }
  if (f.lgld.is_finite() && f.lgld.value < 0) throw Error("lgld must be nonnegative");
  if (f.lkdim.kind == Extent::Kind::infinite) throw Error("lkdim is declared as an integer");
  if (f.lkdim.is_finite() && f.lkdim.value < 0) throw Error("lkdim must be nonnegative");
  return f;
}

namespace {

DimReport report_impl(size_t n, size_t r, bool quasi, bool bijective, const RingFacts& in) {
  if (!bijective) throw Error("dimension bounds require a bijective presentation");
  const RingFacts f = normalize_facts(in);
  DimReport rep;
  rep.nvars = n;
  const int64_t nn = static_cast<int64_t>(n);
  // a single inverted variable over its coefficient ring
  const bool laurent1 = (n == 1 && r == 1);

  if (f.lgld.kind == Extent::Kind::infinite) {
    rep.lgld_lo = rep.lgld_hi = Extent::infinite();
    rep.lgld_exact = true;
  } else if (laurent1 && f.is_semisimple) {
    rep.lgld_lo = rep.lgld_hi = Extent::finite(1);
    rep.lgld_exact = true;
  } else if (quasi && r == 0) {
    rep.lgld_exact = true;
    if (f.lgld.is_finite()) rep.lgld_lo = rep.lgld_hi = Extent::finite(f.lgld.value + nn);
  } else {
    rep.lgld_lo = f.lgld;
    if (f.lgld.is_finite()) rep.lgld_hi = Extent::finite(f.lgld.value + nn);
  }

  if (!f.is_noetherian) {
    rep.lkdim_applicable = false;
    rep.notes.push_back("Krull bounds need a left Noetherian coefficient ring");
  } else if (laurent1 && f.is_field) {
    rep.lkdim_lo = rep.lkdim_hi = Extent::finite(1);
    rep.lkdim_exact = true;
  } else if (quasi && r == 0) {
    rep.lkdim_exact = true;
    if (f.lkdim.is_finite()) rep.lkdim_lo = rep.lkdim_hi = Extent::finite(f.lkdim.value + nn);
  } else {
    rep.lkdim_lo = f.lkdim;
    if (f.lkdim.is_finite()) rep.lkdim_hi = Extent::finite(f.lkdim.value + nn);
  }

  if (f.is_noetherian && f.is_domain)
    rep.udim = Extent::finite(1);
  else
    rep.notes.push_back("uniform dimension needs Noetherian domain coefficients");
  return rep;
}

// one report line; symbolic when the base dimension was never declared
std::string dim_line(const std::string& name, const std::string& base, const Extent& lo,
                     const Extent& hi, bool exact, size_t n) {
  const std::string step = base + " + " + std::to_string(n);
  if (exact) {
    if (hi.is_finite()) return name + " = " + std::to_string(hi.value);
    if (hi.kind == Extent::Kind::infinite) return name + " = infinity";
    return name + " = " + step;
  }
  const std::string l = lo.is_unknown() ? base : std::to_string(lo.value);
  const std::string h = hi.is_unknown() ? step : std::to_string(hi.value);
  return l + " <= " + name + " <= " + h;
}

}  // namespace

std::string DimReport::to_string() const {
  std::string out = dim_line("lgld", "lgld(R)", lgld_lo, lgld_hi, lgld_exact, nvars) + "\n";
  if (lkdim_applicable)
    out += dim_line("lkdim", "lkdim(R)", lkdim_lo, lkdim_hi, lkdim_exact, nvars) + "\n";
  else
    out += "lkdim: unknown\n";
  out += udim.is_finite() ? "udim = " + std::to_string(udim.value) + "\n" : "udim: unknown\n";
  for (const auto& s : notes) out += "note: " + s + "\n";
  return out;
}

DimReport dim_report(const PresPtr& p, const RingFacts& facts) {
  return report_impl(p->nvars(), p->n_invertible(), p->quasi_commutative(),
                     p->bijective_claimed(), facts);
}

DimReport dim_report(const QuantumPresentation& qp, const RingFacts& facts) {
  return report_impl(qp.core->nvars(), qp.r, true, true, facts);
}

std::string KExpr::to_string() const {
  if (multiplicities.empty()) return "0";
  std::string out;
  for (const auto& [j, m] : multiplicities) {
    if (!out.empty()) out += " ⊕ ";
    out += "K" + std::to_string(j);
    if (m != 1) out += "^" + std::to_string(m);
  }
  return out;
}

KExpr k_laurent_step(const KExpr& k, const RingFacts& facts) {
  if (!facts.k_trivial_action)
    throw Error("the Laurent splitting needs the trivial K-action hypothesis");
  KExpr out;
  for (const auto& [j, m] : k.multiplicities) {
    if (m <= 0) throw Error("KExpr multiplicities must be positive");
    out.multiplicities[j] += m;
    if (j > 0) out.multiplicities[j - 1] += m;  // K_{-1} = 0
  }
  return out;
}

KExpr k_groups(const RingFacts& in, int64_t m, int64_t r) {
  const RingFacts f = normalize_facts(in);
  if (!f.is_noetherian || !f.is_regular || !f.k_trivial_action)
    throw Error("K-group decomposition needs noetherian + regular + trivial K-action");
  if (m < 0 || r < 0) throw Error("K-degree and Laurent count must be nonnegative");
  KExpr out;
  for (int64_t j = 0; j <= m; ++j) {
    const int64_t k = m - j;
    if (k > r) continue;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(k));
    out.multiplicities[j] = static_cast<int64_t>(b.get_si());
  }
  return out;
}

}  // namespace spbw
