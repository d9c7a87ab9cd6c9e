#pragma once

// Constructive semistable reduction of one-parameter families of quasimaps
// over Q[t] localized at t. The surgery of the properness argument (blow up
// the unique bad point, contract the old fiber) is realized algebraically:
// translate the bad point to [0:1], base-change t -> s^e until the optimal
// shift exponent is integral, substitute x -> s^a x, and strip t-content.
// Each round is an elementary transformation centered at (x, t) = (0, 0).

#include <map>
#include <set>

#include "qmapk/quasimap.hpp"

namespace qmapk {

/// Binary form in (x, y) with Q[t] coefficients; entry i multiplies x^i y^(m-i).
struct TForm {
  int degree = 0;
  std::vector<TPoly> c;

  TForm() : degree(0), c(1) {}
  TForm(int deg, std::vector<TPoly> coeffs) : degree(deg), c(std::move(coeffs)) {
    if (static_cast<int>(c.size()) != degree + 1)
      throw Error(ErrorKind::DegenerateInput, "coefficient count does not match degree");
  }

  bool is_zero() const {
    for (const auto& p : c)
      if (!tpoly_is_zero(p)) return false;
    return true;
  }

  /// Minimum t-order over all coefficients; -1 for the zero form.
  int t_order() const {
    int best = -1;
    for (const auto& p : c) {
      int o = tpoly_ord(p);
      if (o >= 0 && (best < 0 || o < best)) best = o;
    }
    return best;
  }

  BForm specialize() const {
    std::vector<Rat> out(degree + 1, Rat(0));
    for (int i = 0; i <= degree; ++i)
      if (!c[i].empty()) out[i] = c[i][0];
    return BForm(degree, std::move(out));
  }

  BForm at(const Rat& t0) const {
    std::vector<Rat> out(degree + 1, Rat(0));
    for (int i = 0; i <= degree; ++i) out[i] = tpoly_eval(c[i], t0);
    return BForm(degree, std::move(out));
  }

  BinaryForm<RatFunc> generic() const {
    std::vector<RatFunc> out;
    out.reserve(degree + 1);
    for (const auto& p : c) out.push_back(RatFunc::poly(p));
    return BinaryForm<RatFunc>(degree, std::move(out));
  }

  static TForm constant(const BForm& f) {
    std::vector<TPoly> out;
    out.reserve(f.degree + 1);
    for (const auto& v : f.c) out.push_back(tpoly_const(v));
    return TForm(f.degree, std::move(out));
  }
};

/// Substitution by a constant Moebius matrix, coefficientwise over Q[t].
inline TForm tform_mobius(const TForm& f, const MobiusMatrix& mat) {
  const int m = f.degree;
  std::vector<std::vector<Rat>> p1(m + 1), p2(m + 1);
  p1[0] = {Rat(1)};
  p2[0] = {Rat(1)};
  std::vector<Rat> l1{mat.b, mat.a};
  std::vector<Rat> l2{mat.d, mat.c};
  for (int i = 1; i <= m; ++i) {
    p1[i] = poly_mul(p1[i - 1], l1);
    p2[i] = poly_mul(p2[i - 1], l2);
  }
  std::vector<TPoly> acc(m + 1);
  for (int i = 0; i <= m; ++i) {
    if (tpoly_is_zero(f.c[i])) continue;
    std::vector<Rat> xpoly = poly_mul(p1[i], p2[m - i]);
    for (size_t j = 0; j < xpoly.size(); ++j) {
      if (xpoly[j] == 0) continue;
      acc[j] = tpoly_add(acc[j], tpoly_scale(f.c[i], xpoly[j]));
    }
  }
  return TForm(m, std::move(acc));
}

struct DvrQuasimapFamily {
  int degree = 1;
  Rat weight = 1;
  std::vector<TForm> sections;
  std::vector<std::pair<TForm, Rat>> boundary;
};

/// Validates and normalizes: boundary forms must be flat (no t-content),
/// and the sections are divided by their common t-power so the special
/// fiber does not vanish entirely.
inline DvrQuasimapFamily make_dvr_family(int m, const Rat& u, std::vector<TForm> sections,
                                         std::vector<std::pair<TForm, Rat>> boundary) {
  if (m < 1) throw Error(ErrorKind::DegenerateInput, "degree must be positive");
  if (u <= 0) throw Error(ErrorKind::DegenerateInput, "weight must be positive");
  if (sections.empty()) throw Error(ErrorKind::DegenerateInput, "no sections");
  int content = -1;
  bool any = false;
  for (const auto& f : sections) {
    if (f.degree != m)
      throw Error(ErrorKind::DegenerateInput, "section degree differs from family degree");
    if (f.is_zero()) continue;
    any = true;
    int o = f.t_order();
    if (content < 0 || o < content) content = o;
  }
  if (!any) throw Error(ErrorKind::DegenerateInput, "all sections vanish");
  if (content > 0) {
    for (auto& f : sections)
      for (auto& p : f.c)
        if (!tpoly_is_zero(p)) p.erase(p.begin(), p.begin() + content);
  }
  for (const auto& [form, coeff] : boundary) {
    if (form.is_zero()) throw Error(ErrorKind::DegenerateInput, "zero boundary form");
    if (form.t_order() != 0)
      throw Error(ErrorKind::DegenerateInput, "boundary form is not flat over the base");
    if (coeff <= 0) throw Error(ErrorKind::DegenerateInput, "boundary coefficient must be positive");
  }
  DvrQuasimapFamily fam;
  fam.degree = m;
  fam.weight = u;
  fam.sections = std::move(sections);
  fam.boundary = std::move(boundary);
  return fam;
}

namespace dvr_detail {

inline unsigned denominator_bound(const std::vector<std::pair<TForm, Rat>>& boundary) {
  Int l(1);
  for (const auto& [form, coeff] : boundary)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), coeff.get_den().get_mpz_t());
  return static_cast<unsigned>(l.get_ui());
}

}  // namespace dvr_detail

/// Fiber at t = 0; boundary specialized termwise.
inline Quasimap special_fiber(const DvrQuasimapFamily& fam) {
  std::vector<BForm> secs;
  secs.reserve(fam.sections.size());
  for (const auto& f : fam.sections) secs.push_back(f.specialize());
  std::vector<std::pair<BForm, Rat>> bpairs;
  for (const auto& [form, coeff] : fam.boundary) {
    BForm b0 = form.specialize();
    if (b0.is_zero())
      throw Error(ErrorKind::DegenerateInput, "boundary form vanishes on the special fiber");
    bpairs.emplace_back(b0, coeff);
  }
  return make_quasimap(fam.degree, fam.weight, secs, QDivisor::from_pairs(bpairs),
                       dvr_detail::denominator_bound(fam.boundary));
}

/// Fiber at a nonzero rational parameter value.
inline Quasimap fiber_at(const DvrQuasimapFamily& fam, const Rat& t0) {
  std::vector<BForm> secs;
  secs.reserve(fam.sections.size());
  for (const auto& f : fam.sections) secs.push_back(f.at(t0));
  std::vector<std::pair<BForm, Rat>> bpairs;
  for (const auto& [form, coeff] : fam.boundary) {
    BForm b = form.at(t0);
    if (b.is_zero())
      throw Error(ErrorKind::DegenerateInput, "boundary form vanishes on the chosen fiber");
    bpairs.emplace_back(b, coeff);
  }
  return make_quasimap(fam.degree, fam.weight, secs, QDivisor::from_pairs(bpairs),
                       dvr_detail::denominator_bound(fam.boundary));
}

/// Classification of the generic fiber, over the field Q(t).
inline Classification<RatFunc> generic_classify(const DvrQuasimapFamily& fam) {
  QmapData<RatFunc> data;
  data.degree = fam.degree;
  data.weight = RatFunc(fam.weight);
  for (const auto& f : fam.sections) data.sections.push_back(f.generic());
  std::vector<std::pair<BinaryForm<RatFunc>, RatFunc>> bpairs;
  for (const auto& [form, coeff] : fam.boundary)
    bpairs.emplace_back(form.generic(), RatFunc(coeff));
  data.boundary = QDiv<RatFunc>::from_pairs(bpairs);
  return classify_kernel(data);
}

struct MonomialEntry {
  Rat coeff;
  unsigned s_power = 0;
};

struct ReductionStep {
  RationalPoint center;
  unsigned shift = 0;               // exponent a in x -> s^a x
  MonomialEntry matrix[2][2];       // composite substitution for this round
};

struct ReductionReport {
  unsigned base_change_exponent = 1;  // e with t = s^e
  std::vector<ReductionStep> steps;
  DvrQuasimapFamily result;
  unsigned iterations = 0;
};

inline unsigned dvr_default_iteration_cap() { return 1000; }

inline ReductionReport semistable_reduction(const DvrQuasimapFamily& input,
                                            unsigned max_iterations = dvr_default_iteration_cap()) {
  {
    Classification<RatFunc> gen = generic_classify(input);
    if (!gen.semistable_or_better())
      throw Error(ErrorKind::PreconditionViolated,
                  "generic fiber is not K-semistable; no semistable model exists");
  }

  ReductionReport rep;
  rep.result = input;
  DvrQuasimapFamily& fam = rep.result;
  const Rat mu = [&]() -> Rat {
    Rat d(0);
    for (const auto& [form, coeff] : fam.boundary) d += coeff * Rat(form.degree);
    return d + fam.weight * Rat(fam.degree);
  }();

  for (;;) {
    if (rep.iterations >= max_iterations)
      throw Error(ErrorKind::NonTermination, "iteration cap exceeded during reduction");

    Quasimap q0 = special_fiber(fam);
    QmapData<Rat> d0 = q0.data();
    BForm g0 = fixed_part_form(d0);
    QDivisor twisted = twisted_boundary(d0, g0);

    std::vector<ClusterTerm<Rat>> bad;
    for (const auto& t : twisted.terms())
      if (t.coeff > mu / 2) bad.push_back(t);
    if (bad.empty()) break;
    if (bad.size() != 1 || bad[0].form.degree != 1)
      throw Error(ErrorKind::PreconditionViolated,
                  "bad locus is not a single rational point; deg(B+uB') <= mu is violated");

    // Root of c1 x + c0 y: [-c0 : c1].
    RationalPoint p0 = bad[0].form.c[1] == 0
                           ? RationalPoint::infinity()
                           : RationalPoint::affine(-bad[0].form.c[0] / bad[0].form.c[1]);

    MobiusMatrix translate = p0.infinite
                                 ? MobiusMatrix::swap_xy()
                                 : MobiusMatrix(Rat(1), p0.a, Rat(0), Rat(1));
    bool trivial_translate = !p0.infinite && p0.a == 0;
    if (!trivial_translate) {
      for (auto& f : fam.sections) f = tform_mobius(f, translate);
      for (auto& [form, coeff] : fam.boundary) form = tform_mobius(form, translate);
    }

    // Newton data: (x-power, t-order) support of every form.
    struct NewtonSet {
      std::vector<std::pair<int, int>> pts;
    };
    std::vector<NewtonSet> section_pts, boundary_pts;
    auto newton = [](const TForm& f) {
      NewtonSet n;
      for (int k = 0; k <= f.degree; ++k) {
        int o = tpoly_ord(f.c[k]);
        if (o >= 0) n.pts.push_back({k, o});
      }
      return n;
    };
    for (const auto& f : fam.sections)
      if (!f.is_zero()) section_pts.push_back(newton(f));
    for (const auto& [form, coeff] : fam.boundary) boundary_pts.push_back(newton(form));

    std::set<Rat> slopes;
    {
      std::vector<std::pair<int, int>> all;
      for (const auto& n : section_pts) all.insert(all.end(), n.pts.begin(), n.pts.end());
      for (const auto& n : boundary_pts) all.insert(all.end(), n.pts.begin(), n.pts.end());
      for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = 0; j < all.size(); ++j) {
          auto [k1, o1] = all[i];
          auto [k2, o2] = all[j];
          if (k1 > k2 && o1 < o2) {
            Rat a(o2 - o1, k1 - k2);
            a.canonicalize();
            slopes.insert(a);
          }
        }
    }

    auto mult0_after = [&](const Rat& a) {
      auto content = [&](const NewtonSet& n) {
        std::optional<Rat> c;
        for (auto [k, o] : n.pts) {
          Rat v = a * Rat(k) + Rat(o);
          if (!c || v < *c) c = v;
        }
        return *c;
      };
      auto ord0 = [&](const NewtonSet& n, const Rat& cval) {
        int best = -1;
        for (auto [k, o] : n.pts)
          if (a * Rat(k) + Rat(o) == cval && (best < 0 || k < best)) best = k;
        return best;
      };
      std::optional<Rat> gamma;
      for (const auto& n : section_pts) {
        Rat cv = content(n);
        if (!gamma || cv < *gamma) gamma = cv;
      }
      int sec_ord = -1;
      for (const auto& n : section_pts) {
        if (content(n) != *gamma) continue;
        int o = ord0(n, *gamma);
        if (sec_ord < 0 || o < sec_ord) sec_ord = o;
      }
      Rat m0 = fam.weight * Rat(sec_ord);
      for (size_t b = 0; b < boundary_pts.size(); ++b)
        m0 += fam.boundary[b].second * Rat(ord0(boundary_pts[b], content(boundary_pts[b])));
      return m0;
    };

    Rat current = mult0_after(Rat(0));
    std::optional<Rat> chosen;
    for (const Rat& a : slopes) {
      Rat m0 = mult0_after(a);
      if (m0 <= mu / 2 || m0 < current) {
        chosen = a;
        break;
      }
    }
    if (!chosen)
      throw Error(ErrorKind::NonTermination,
                  "no shift decreases the bad multiplicity; the input family is inconsistent");

    // Base change so the shift exponent is integral.
    unsigned stretch = static_cast<unsigned>(chosen->get_den().get_ui());
    Rat scaled = *chosen * Rat(static_cast<long>(stretch));
    unsigned a_int = static_cast<unsigned>(scaled.get_num().get_ui());
    if (stretch > 1) {
      auto stretch_poly = [&](TPoly& p) {
        if (tpoly_is_zero(p)) return;
        TPoly out((p.size() - 1) * stretch + 1, Rat(0));
        for (size_t i = 0; i < p.size(); ++i) out[i * stretch] = p[i];
        p = std::move(out);
      };
      for (auto& f : fam.sections)
        for (auto& p : f.c) stretch_poly(p);
      for (auto& [form, coeff] : fam.boundary)
        for (auto& p : form.c) stretch_poly(p);
      rep.base_change_exponent *= stretch;
    }

    // Shift x -> s^a x, then strip content.
    auto shift_tpow = [&](TForm& f) {
      for (int k = 0; k <= f.degree; ++k) {
        if (tpoly_is_zero(f.c[k])) continue;
        TPoly shifted(static_cast<size_t>(a_int) * k, Rat(0));
        shifted.insert(shifted.end(), f.c[k].begin(), f.c[k].end());
        f.c[k] = std::move(shifted);
      }
    };
    for (auto& f : fam.sections) shift_tpow(f);
    int gamma = -1;
    for (const auto& f : fam.sections) {
      int o = f.t_order();
      if (o >= 0 && (gamma < 0 || o < gamma)) gamma = o;
    }
    if (gamma > 0)
      for (auto& f : fam.sections)
        for (auto& p : f.c)
          if (!tpoly_is_zero(p)) p.erase(p.begin(), p.begin() + gamma);
    for (auto& [form, coeff] : fam.boundary) {
      shift_tpow(form);
      int o = form.t_order();
      if (o > 0)
        for (auto& p : form.c)
          if (!tpoly_is_zero(p)) p.erase(p.begin(), p.begin() + o);
    }

    ReductionStep step;
    step.center = p0;
    step.shift = a_int;
    // composite substitution: translate then x -> s^a x
    if (p0.infinite) {
      step.matrix[0][0] = {Rat(0), 0};
      step.matrix[0][1] = {Rat(1), 0};
      step.matrix[1][0] = {Rat(1), a_int};
      step.matrix[1][1] = {Rat(0), 0};
    } else {
      step.matrix[0][0] = {Rat(1), a_int};
      step.matrix[0][1] = {p0.a, 0};
      step.matrix[1][0] = {Rat(0), 0};
      step.matrix[1][1] = {Rat(1), 0};
    }
    rep.steps.push_back(step);
    ++rep.iterations;
  }

  Quasimap final_fiber = special_fiber(fam);
  if (!classify(final_fiber).semistable_or_better())
    throw Error(ErrorKind::NonTermination, "reduction finished on a non-semistable fiber");
  return rep;
}

}  // namespace qmapk
