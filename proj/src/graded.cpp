#include "spbw/graded.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace spbw {

namespace {

struct GradedCache {
  std::mutex mu;
  PresPtr assoc;
};

std::set<std::string> taken_names(const Presentation& p) {
  std::set<std::string> names;
  for (const auto& g : p.ring()->all_gens()) names.insert(g);
  for (PresPtr q = p.nested_base(); q; q = q->nested_base())
    for (const auto& v : q->vars()) names.insert(v);
  return names;
}

}  // namespace

PresPtr assoc_algebra(const PresPtr& p) {
  auto cache = p->cache<GradedCache>();
  std::lock_guard<std::mutex> lk(cache->mu);
  if (cache->assoc) return cache->assoc;

  const size_t n = p->nvars();
  Presentation::Data d;
  d.name = p->name() + "-gr";
  d.ring = p->ring();
  d.nested_base = p->nested_base();
  const auto taken = taken_names(*p);
  for (size_t i = 0; i < n; ++i) {
    std::string z = "z" + std::to_string(i + 1);
    while (taken.count(z)) z = "_" + z;
    d.vars.push_back(std::move(z));
  }
  d.invertible.assign(n, 0);
  for (size_t i = 0; i < n; ++i) d.invertible[i] = p->invertible(i) ? 1 : 0;
  for (size_t i = 0; i < n; ++i) d.sigma.push_back(p->sigma(i));
  d.delta.resize(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (!coeff_is_one(p->c(i, j))) d.c[{int(i), int(j)}] = p->c(i, j);

  cache->assoc = Presentation::make(std::move(d));
  return cache->assoc;
}

std::pair<int64_t, SkewPoly> top_component(const SkewPoly& f) {
  if (f.is_zero()) throw Error("the zero element has no top component");
  const PresPtr as = assoc_algebra(f.pres());
  const int64_t m = *f.degree();
  SkewPoly::Terms ts;
  for (const auto& [a, c] : f.terms()) {
    if (ev_deg(a) == m) ts.emplace(a, c);
  }
  return {m, SkewPoly::from_terms(as, std::move(ts))};
}

bool check_gr_mult(const PresPtr& p, const SkewPoly& a, const SkewPoly& b) {
  if (!a.homogeneous() || !b.homogeneous()) throw Error("graded product needs homogeneous inputs");
  const PresPtr as = assoc_algebra(p);
  if (a.is_zero() || b.is_zero()) return true;
  const SkewPoly za = top_component(a).second;
  const SkewPoly zb = top_component(b).second;
  const SkewPoly graded = mul(za, zb);
  const SkewPoly full = mul(a, b);
  const int64_t want = *a.degree() + *b.degree();
  if (full.is_zero() || *full.degree() < want) return graded.is_zero();
  auto [m, top] = top_component(full);
  return m == want && top.eq(graded);
}

std::vector<TowerStep> tower(const PresPtr& p) {
  if (!p->quasi_commutative())
    throw Error("tower decomposition needs a quasi-commutative presentation");
  if (p->is_nested())
    throw Error("tower decomposition needs a flat presentation; flatten first");
  std::vector<TowerStep> steps;
  for (size_t j = 0; j < p->nvars(); ++j) {
    TowerStep st;
    st.index = j;
    st.theta_on_ring = p->sigma(j);
    bool invertible = p->sigma(j).inverse_images.has_value();
    for (size_t i = 0; i < j; ++i) {
      const RingElem cij = p->c(i, j).scalar;
      st.theta_on_vars[i] = cij;
      if (!cij.is_unit()) invertible = false;
    }
    if (invertible) {
      st.theta_on_vars_inverse.emplace();
      for (size_t i = 0; i < j; ++i) {
        const Coeff ci = *coeff_try_invert(p->c(i, j));
        (*st.theta_on_vars_inverse)[i] = p->apply_sigma_inv(j, ci).scalar;
      }
    }
    steps.push_back(std::move(st));
  }
  return steps;
}

}  // namespace spbw
