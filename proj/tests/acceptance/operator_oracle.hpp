#pragma once

// Differential operators on Q[t_1..t_n], written independently of the main
// library: an operator is a rational combination of t^a d^b monomials, a
// polynomial a rational combination of t^m, and application uses nothing but
// the falling-factorial rule d^b t^m = m(m-1)...(m-b+1) t^{m-b}. Composition
// of operators is deliberately absent; composing means applying twice.

#include <gmpxx.h>

#include <map>
#include <vector>

namespace oracle {

using Mono = std::vector<int>;
using Poly = std::map<Mono, mpq_class>;

struct OpKey {
  Mono t, d;
  bool operator<(const OpKey& o) const { return t != o.t ? t < o.t : d < o.d; }
};
using Op = std::map<OpKey, mpq_class>;

inline void add_term(Poly& p, const Mono& m, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = p.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

// d^b applied to c * t^m, then multiplied by t^a
inline void apply_term(Poly& out, const OpKey& k, const mpq_class& q, const Mono& m,
                       const mpq_class& c) {
  const size_t n = m.size();
  mpq_class coeff = q * c;
  Mono res(n);
  for (size_t i = 0; i < n; ++i) {
    if (m[i] < k.d[i]) return;
    for (int step = 0; step < k.d[i]; ++step) coeff *= m[i] - step;
    res[i] = k.t[i] + m[i] - k.d[i];
  }
  add_term(out, res, coeff);
}

inline Poly apply(const Op& op, const Poly& p) {
  Poly out;
  for (const auto& [k, q] : op)
    for (const auto& [m, c] : p) apply_term(out, k, q, m, c);
  return out;
}

}  // namespace oracle
