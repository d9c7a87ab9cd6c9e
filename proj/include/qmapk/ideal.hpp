#pragma once

// Homogeneous ideals of the target cone: just enough multivariate polynomial
// arithmetic to evaluate generators on tuples of binary forms.

#include <vector>

#include "qmapk/binform.hpp"

namespace qmapk {

struct MonomialTerm {
  Rat coeff;
  std::vector<unsigned> exponents;  // one entry per ambient variable

  unsigned total_degree() const {
    unsigned d = 0;
    for (unsigned e : exponents) d += e;
    return d;
  }
};

/// Homogeneous polynomial in N+1 variables.
struct HomPoly {
  std::vector<MonomialTerm> terms;

  unsigned num_vars() const { return terms.empty() ? 0 : static_cast<unsigned>(terms[0].exponents.size()); }

  void validate(unsigned nvars) const {
    if (terms.empty()) return;
    unsigned d = terms[0].total_degree();
    for (const auto& t : terms) {
      if (t.exponents.size() != nvars)
        throw Error(ErrorKind::DegenerateInput, "generator arity mismatch");
      if (t.total_degree() != d)
        throw Error(ErrorKind::DegenerateInput, "generator is not homogeneous");
    }
  }
};

/// Substitutes sections into one generator; result is a binary form of
/// degree m * deg(g), identically zero iff the relation holds.
inline BForm evaluate_generator(const HomPoly& g, const std::vector<BForm>& sections, int m) {
  if (g.terms.empty()) return BForm::zero(0);
  unsigned d = g.terms[0].total_degree();
  BForm acc = BForm::zero(static_cast<int>(d) * m);
  for (const auto& t : g.terms) {
    BForm prod(0, {t.coeff});
    for (size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      prod = form_mul(prod, form_pow(sections[i], t.exponents[i]));
    }
    acc = form_add(acc, prod);
  }
  return acc;
}

/// True iff every generator vanishes identically on the sections, i.e. the
/// quasimap factors through the cone cut out by the generators.
inline bool evaluate_ideal(const std::vector<HomPoly>& generators,
                           const std::vector<BForm>& sections) {
  if (sections.empty()) throw Error(ErrorKind::DegenerateInput, "no sections");
  int m = sections[0].degree;
  for (const auto& f : sections)
    if (f.degree != m)
      throw Error(ErrorKind::DegenerateInput, "sections of unequal degree");
  for (const auto& g : generators) {
    g.validate(static_cast<unsigned>(sections.size()));
    if (!evaluate_generator(g, sections, m).is_zero()) return false;
  }
  return true;
}

}  // namespace qmapk
