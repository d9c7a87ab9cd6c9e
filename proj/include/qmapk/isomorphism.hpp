#pragma once

// Isomorphism testing of quasimaps: search for a Moebius substitution M and
// scalar c with sections_1 o M = c * sections_2 and boundary transported.
// Candidates for M are pinned down by the rational points of the special
// support (boundary, fixed part, section divisors); leftover freedom is
// resolved by Newton-ratio solving on a diagonal or affine remainder, or by
// standardizing an irreducible quadratic cluster and root-finding on the
// residual torus parameter.
//
// Included at the bottom of qmapk/quasimap.hpp; not for direct inclusion.

#include <algorithm>
#include <set>
#include <tuple>

#include "qmapk/rootfind.hpp"

namespace qmapk {
namespace iso_detail {

struct TaggedForm {
  BForm form;
  int kind;       // 0 boundary cluster, 1 fixed-part cluster, 2 section-divisor cluster
  Rat coeff;      // kind 0
  int index;      // kind 2
  unsigned expo;  // kinds 1, 2

  bool same_tag(const TaggedForm& o) const {
    return kind == o.kind && coeff == o.coeff && index == o.index && expo == o.expo &&
           form.degree == o.form.degree;
  }
};

inline std::vector<TaggedForm> build_config(const Quasimap& q, bool include_sections) {
  std::vector<TaggedForm> out;
  for (const auto& t : q.boundary.terms()) out.push_back({t.form, 0, t.coeff, -1, 0});
  BForm g = gcd_many(q.sections);
  if (g.degree > 0) {
    CoprimeBasis<Rat> cb = coprime_squarefree_basis<Rat>({g});
    for (size_t j = 0; j < cb.basis.size(); ++j)
      if (cb.expo[0][j] > 0) out.push_back({cb.basis[j], 1, Rat(0), -1, cb.expo[0][j]});
  }
  if (include_sections) {
    for (size_t i = 0; i < q.sections.size(); ++i) {
      if (q.sections[i].is_zero()) continue;
      CoprimeBasis<Rat> cb = coprime_squarefree_basis<Rat>({q.sections[i]});
      for (size_t j = 0; j < cb.basis.size(); ++j)
        if (cb.expo[0][j] > 0)
          out.push_back({cb.basis[j], 2, Rat(0), static_cast<int>(i), cb.expo[0][j]});
    }
  }
  return out;
}

/// Full exact check that substitution by M carries q1 onto q2.
inline bool verify(const Quasimap& q1, const Quasimap& q2, const MobiusMatrix& M) {
  if (!M.invertible()) return false;
  std::optional<Rat> c;
  for (size_t i = 0; i < q1.sections.size(); ++i) {
    const BForm& f2 = q2.sections[i];
    if (q1.sections[i].is_zero() != f2.is_zero()) return false;
    if (f2.is_zero()) continue;
    BForm g = apply_mobius_raw(q1.sections[i], M);
    int k = f2.x_ord();
    if (g.c[k] == 0) return false;
    if (!c) c = g.c[k] / f2.c[k];
    if (g != form_scale(f2, *c)) return false;
  }
  if (!c) return false;
  return apply_mobius(q1.boundary, M) == q2.boundary;
}

// ---- point-map constructors -------------------------------------------------

inline std::pair<Rat, Rat> coords(const RationalPoint& p) {
  return p.infinite ? std::make_pair(Rat(1), Rat(0)) : std::make_pair(p.a, Rat(1));
}

/// Point map sending p -> [0:1], q -> [1:0].
inline MobiusMatrix pair_map(const RationalPoint& p, const RationalPoint& q) {
  auto [xp, yp] = coords(p);
  auto [xq, yq] = coords(q);
  return MobiusMatrix(yp, -xp, yq, -xq);
}

/// Point map sending p -> [0:1], q -> [1:1], r -> [1:0].
inline MobiusMatrix tri_map(const RationalPoint& p, const RationalPoint& q,
                            const RationalPoint& r) {
  auto [xp, yp] = coords(p);
  auto [xq, yq] = coords(q);
  auto [xr, yr] = coords(r);
  Rat s1 = yr * xq - xr * yq;
  Rat s2 = yp * xq - xp * yq;
  return MobiusMatrix(yp * s1, -xp * s1, yr * s2, -xr * s2);
}

/// Point map sending p -> [1:0].
inline MobiusMatrix to_infinity(const RationalPoint& p) {
  if (p.infinite) return MobiusMatrix::identity();
  return MobiusMatrix(Rat(0), Rat(1), Rat(1), -p.a);
}

// ---- anchors ----------------------------------------------------------------

struct PointLess {
  bool operator()(const RationalPoint& a, const RationalPoint& b) const {
    if (a.infinite != b.infinite) return b.infinite;
    if (a.infinite) return false;
    return a.a < b.a;
  }
};

inline std::vector<RationalPoint> anchor_points(const std::vector<TaggedForm>& cfg) {
  std::set<RationalPoint, PointLess> pts;
  for (const auto& tf : cfg)
    for (const auto& p : rational_roots(tf.form)) pts.insert(p);
  return {pts.begin(), pts.end()};
}

// ---- diagonal solving ---------------------------------------------------------

struct DiagCandidates {
  bool constrained = false;
  std::vector<Rat> lambdas;

  void add_roots(Rat val, int e) {
    constrained = true;
    if (val == 0) return;
    if (e < 0) {
      e = -e;
      val = 1 / val;
    }
    std::optional<Rat> root = rat_root(val, static_cast<unsigned>(e));
    if (!root) return;
    lambdas.push_back(*root);
    if (e % 2 == 0 && *root != 0) lambdas.push_back(-*root);
  }
};

/// One proportionality h1(lambda x) ~ h2 contributes its first ratio
/// equation. Mismatched supports contribute an unsatisfiable constraint.
inline void diag_from_pair(const std::vector<Rat>& v1, const std::vector<Rat>& v2,
                           DiagCandidates& out) {
  if (v1.size() != v2.size()) {
    out.constrained = true;
    return;
  }
  for (size_t k = 0; k < v1.size(); ++k)
    if ((v1[k] == 0) != (v2[k] == 0)) {
      out.constrained = true;
      return;
    }
  int i = -1, j = -1;
  for (size_t k = 0; k < v2.size(); ++k) {
    if (v2[k] == 0) continue;
    if (i < 0) i = static_cast<int>(k);
    else {
      j = static_cast<int>(k);
      break;
    }
  }
  if (j < 0) return;  // monomial: no constraint from this pair
  out.add_roots((v2[j] * v1[i]) / (v2[i] * v1[j]), j - i);
}

/// Common-scalar system across sections: entries (k, a, b) demand
/// c = a * lambda^k / b for a single c; any two distinct slots constrain.
inline void diag_from_entries(const std::vector<std::tuple<int, Rat, Rat>>& entries,
                              DiagCandidates& out) {
  for (size_t s = 0; s + 1 < entries.size(); ++s) {
    auto [k1, a1, b1] = entries[s];
    for (size_t t = s + 1; t < entries.size(); ++t) {
      auto [k2, a2, b2] = entries[t];
      if (k1 == k2) continue;
      out.add_roots((a2 * b1) / (b2 * a1), k1 - k2);
      return;
    }
  }
}

// ---- polynomial shift (Taylor recentering) ------------------------------------

/// u(x + t), via repeated synthetic division by (x - t).
inline std::vector<Rat> poly_shift(std::vector<Rat> u, const Rat& t) {
  std::vector<Rat> out(u.size(), Rat(0));
  for (size_t k = 0; k < out.size(); ++k) {
    // divide u by (x - t): remainder -> out[k], quotient -> u
    if (u.empty()) break;
    std::vector<Rat> q(u.size() > 1 ? u.size() - 1 : 0, Rat(0));
    Rat carry(0);
    for (size_t i = u.size(); i-- > 1;) {
      carry = u[i] + t * carry;
      q[i - 1] = carry;
    }
    out[k] = u[0] + t * carry;
    u = std::move(q);
  }
  return out;
}

inline std::vector<Rat> dehom(const BForm& f) {
  return {f.c.begin(), f.c.begin() + f.x_deg() + 1};
}

// ---- symbolic composition for the torus search --------------------------------
// M entries are linear forms in (a, b), stored as BForm of degree 1 in (a, b).
// g o M has x-coefficients homogeneous of degree deg(g) in (a, b).

using ABForm = BForm;  // binary form in the torus parameters (a, b)

inline std::vector<ABForm> symbolic_compose(const BForm& g, const ABForm& m00,
                                            const ABForm& m01, const ABForm& m10,
                                            const ABForm& m11) {
  const int d = g.degree;
  // power tables of the two linear-in-x rows; entry e is a vector over
  // x-power whose coefficients are (a,b)-forms of degree e
  std::vector<std::vector<ABForm>> p1(d + 1), p2(d + 1);
  p1[0] = {BForm(0, {Rat(1)})};
  p2[0] = {BForm(0, {Rat(1)})};
  auto mul_row = [](const std::vector<ABForm>& u, const ABForm& lo, const ABForm& hi) {
    // multiply an x-polynomial with AB coefficients by (hi*x + lo)
    int dego = u.empty() ? 0 : u[0].degree;
    std::vector<ABForm> r(u.size() + 1, BForm::zero(dego + 1));
    for (size_t i = 0; i < u.size(); ++i) {
      r[i] = form_add(r[i], form_mul(u[i], lo));
      r[i + 1] = form_add(r[i + 1], form_mul(u[i], hi));
    }
    return r;
  };
  for (int e = 1; e <= d; ++e) {
    p1[e] = mul_row(p1[e - 1], m01, m00);
    p2[e] = mul_row(p2[e - 1], m11, m10);
  }
  std::vector<ABForm> acc(d + 1, BForm::zero(d));
  for (int i = 0; i <= d; ++i) {
    if (g.c[i] == 0) continue;
    const auto& u = p1[i];
    const auto& v = p2[d - i];
    for (size_t a = 0; a < u.size(); ++a)
      for (size_t b = 0; b < v.size(); ++b)
        acc[a + b] = form_add(acc[a + b], form_scale(form_mul(u[a], v[b]), g.c[i]));
  }
  return acc;
}

/// Proportionality minors of (g1 o M) against g2, as (a,b)-forms.
inline void proportionality_minors(const BForm& g1, const BForm& g2, const ABForm& m00,
                                   const ABForm& m01, const ABForm& m10, const ABForm& m11,
                                   std::vector<ABForm>& minors) {
  if (g1.degree != g2.degree) return;
  std::vector<ABForm> comp = symbolic_compose(g1, m00, m01, m10, m11);
  int pivot = g2.x_ord();
  for (int j = 0; j <= g2.degree; ++j) {
    if (j == pivot) continue;
    ABForm mi = form_add(form_scale(comp[j], g2.c[pivot]), form_scale(comp[pivot], Rat(-g2.c[j])));
    if (!mi.is_zero()) minors.push_back(mi);
  }
}

// ---- main search ---------------------------------------------------------------

struct IsoProblem {
  const Quasimap& q1;
  const Quasimap& q2;
  std::vector<TaggedForm> cfg1, cfg2;
  bool constant = false;
};

inline bool try_candidate(const IsoProblem& pr, const MobiusMatrix& M) {
  return M.invertible() && verify(pr.q1, pr.q2, M);
}

/// Diagonal leftover: M = U1^-1 diag(lambda,1) U2 once two anchors are pinned.
inline bool solve_diagonal(const IsoProblem& pr, const MobiusMatrix& U1,
                           const MobiusMatrix& U2) {
  MobiusMatrix U1i = U1.inverse(), U2i = U2.inverse();
  DiagCandidates cands;
  // config pairs within matching tags
  for (const auto& t1 : pr.cfg1) {
    BForm h1 = apply_mobius(t1.form, U1i);
    for (const auto& t2 : pr.cfg2) {
      if (!t1.same_tag(t2)) continue;
      BForm h2 = apply_mobius(t2.form, U2i);
      if (h1.x_ord() != h2.x_ord() || h1.x_deg() != h2.x_deg()) continue;
      std::vector<Rat> v1(h1.c.begin(), h1.c.end());
      std::vector<Rat> v2(h2.c.begin(), h2.c.end());
      diag_from_pair(v1, v2, cands);
    }
  }
  // common-scalar entries across sections
  if (!pr.constant) {
    std::vector<std::tuple<int, Rat, Rat>> entries;
    bool ok = true;
    for (size_t i = 0; i < pr.q1.sections.size() && ok; ++i) {
      if (pr.q1.sections[i].is_zero()) continue;
      BForm h1 = apply_mobius_raw(pr.q1.sections[i], U1i);
      BForm h2 = apply_mobius_raw(pr.q2.sections[i], U2i);
      for (int k = 0; k <= h1.degree; ++k) {
        if ((h1.c[k] == 0) != (h2.c[k] == 0)) {
          ok = false;
          break;
        }
        if (h1.c[k] != 0) entries.emplace_back(k, h1.c[k], h2.c[k]);
      }
    }
    if (!ok) return false;
    diag_from_entries(entries, cands);
  }
  std::vector<Rat> lambdas = cands.lambdas;
  if (!cands.constrained) lambdas.push_back(Rat(1));
  for (const Rat& l : lambdas) {
    if (l == 0) continue;
    MobiusMatrix D(l, Rat(0), Rat(0), Rat(1));
    if (try_candidate(pr, U1i * D * U2)) return true;
  }
  return false;
}

/// Affine leftover: one anchor pinned at infinity on both sides.
inline bool solve_affine(const IsoProblem& pr, const MobiusMatrix& U1, const MobiusMatrix& U2) {
  MobiusMatrix U1i = U1.inverse(), U2i = U2.inverse();

  struct Driver {
    std::vector<Rat> u1, u2;
  };
  std::vector<Driver> drivers;
  auto add_driver = [&](const BForm& f1, const BForm& f2) {
    BForm h1 = apply_mobius_raw(f1, U1i);
    BForm h2 = apply_mobius_raw(f2, U2i);
    if (h1.is_zero() || h2.is_zero()) return;
    if (h1.x_deg() != h2.x_deg() || h1.x_deg() < 2) return;
    drivers.push_back({dehom(h1), dehom(h2)});
  };
  for (const auto& t1 : pr.cfg1)
    for (const auto& t2 : pr.cfg2)
      if (t1.same_tag(t2)) add_driver(t1.form, t2.form);
  if (!pr.constant)
    for (size_t i = 0; i < pr.q1.sections.size(); ++i)
      if (!pr.q1.sections[i].is_zero() && !pr.q2.sections[i].is_zero())
        add_driver(pr.q1.sections[i], pr.q2.sections[i]);

  if (drivers.empty()) {
    // nothing constrains the affine part beyond the anchor
    return try_candidate(pr, U1i * U2);
  }
  for (const auto& dr : drivers) {
    int d = static_cast<int>(dr.u1.size()) - 1;
    Rat t1 = -dr.u1[d - 1] / (Rat(d) * dr.u1[d]);
    Rat t2 = -dr.u2[d - 1] / (Rat(d) * dr.u2[d]);
    std::vector<Rat> w1 = poly_shift(dr.u1, t1);
    std::vector<Rat> w2 = poly_shift(dr.u2, t2);
    DiagCandidates cands;
    diag_from_pair(w1, w2, cands);
    std::vector<Rat> alphas = cands.lambdas;
    if (!cands.constrained) alphas.push_back(Rat(1));
    for (const Rat& alpha : alphas) {
      if (alpha == 0) continue;
      Rat beta = t1 - alpha * t2;
      MobiusMatrix A(alpha, beta, Rat(0), Rat(1));
      if (try_candidate(pr, U1i * A * U2)) return true;
    }
  }
  return false;
}

/// No rational anchors: standardize an irreducible quadratic cluster pair
/// and search the residual torus parameter by exact root-finding.
inline bool solve_quadratic_pinned(const IsoProblem& pr) {
  bool found_quadratic = false;
  for (const auto& t1 : pr.cfg1) {
    if (t1.form.degree != 2 || t1.form.x_deg() != 2) continue;
    for (const auto& t2 : pr.cfg2) {
      if (!t1.same_tag(t2) || t2.form.x_deg() != 2) continue;
      found_quadratic = true;
      // roots of A x^2 + B x + C standardize to +-sqrt(disc) under z -> 2Az + B
      Rat A1 = t1.form.c[2], B1 = t1.form.c[1], C1 = t1.form.c[0];
      Rat A2 = t2.form.c[2], B2 = t2.form.c[1], C2 = t2.form.c[0];
      Rat D1 = B1 * B1 - 4 * A1 * C1;
      Rat D2 = B2 * B2 - 4 * A2 * C2;
      if (D1 == 0 || D2 == 0) continue;  // squarefree quadratics have nonzero disc
      std::optional<Rat> sigma = rat_root(D1 / D2, 2);
      if (!sigma) continue;
      MobiusMatrix V1(Rat(2) * A1, B1, Rat(0), Rat(1));
      MobiusMatrix V2(Rat(2) * A2, B2, Rat(0), Rat(1));
      MobiusMatrix V1i = V1.inverse();

      for (int sign = 0; sign < 2; ++sign) {
        Rat s = sign ? -*sigma : *sigma;
        for (int family = 0; family < 2; ++family) {
          // M'(a,b) = [[s a, s b D2],[b, a]] or [[s a, s b D2],[-b, -a]]
          ABForm fa(1, {Rat(0), Rat(1)});   // a
          ABForm fb(1, {Rat(1), Rat(0)});   // b
          ABForm m00 = form_scale(fa, s);
          ABForm m01 = form_scale(fb, Rat(s * D2));
          ABForm m10 = family ? form_scale(fb, Rat(-1)) : fb;
          ABForm m11 = family ? form_scale(fa, Rat(-1)) : fa;
          // conjugate by the standardizations: M(a,b) = V1^-1 M' V2
          auto lin = [](const ABForm& f, const Rat& c) { return form_scale(f, c); };
          // matrix product with rational outer factors
          ABForm n00 = form_add(lin(m00, V1i.a * V2.a), form_add(lin(m10, V1i.b * V2.a),
                        form_add(lin(m01, V1i.a * V2.c), lin(m11, V1i.b * V2.c))));
          ABForm n01 = form_add(lin(m00, V1i.a * V2.b), form_add(lin(m10, V1i.b * V2.b),
                        form_add(lin(m01, V1i.a * V2.d), lin(m11, V1i.b * V2.d))));
          ABForm n10 = form_add(lin(m00, V1i.c * V2.a), form_add(lin(m10, V1i.d * V2.a),
                        form_add(lin(m01, V1i.c * V2.c), lin(m11, V1i.d * V2.c))));
          ABForm n11 = form_add(lin(m00, V1i.c * V2.b), form_add(lin(m10, V1i.d * V2.b),
                        form_add(lin(m01, V1i.c * V2.d), lin(m11, V1i.d * V2.d))));

          std::vector<ABForm> minors;
          for (const auto& o1 : pr.cfg1)
            for (const auto& o2 : pr.cfg2)
              if (o1.same_tag(o2) && !(&o1 == &t1 && &o2 == &t2))
                proportionality_minors(o1.form, o2.form, n00, n01, n10, n11, minors);
          if (!pr.constant)
            for (size_t i = 0; i < pr.q1.sections.size(); ++i)
              if (!pr.q1.sections[i].is_zero() && !pr.q2.sections[i].is_zero())
                proportionality_minors(pr.q1.sections[i], pr.q2.sections[i], n00, n01, n10,
                                       n11, minors);

          std::vector<RationalPoint> params;
          if (minors.empty()) {
            params.push_back(RationalPoint::infinity());  // (a:b) = (1:0)
            params.push_back(RationalPoint::affine(Rat(0)));
            params.push_back(RationalPoint::affine(Rat(1)));
          } else {
            BForm g = minors[0];
            for (size_t i = 1; i < minors.size(); ++i) g = gcd_forms(g, minors[i]);
            if (g.degree == 0) continue;  // no common root: this pairing fails
            params = rational_roots(g);
          }
          for (const auto& ab : params) {
            auto [av, bv] = coords(ab);
            auto ev = [&](const ABForm& f) {
              return f.eval(av, bv);
            };
            MobiusMatrix M(ev(n00), ev(n01), ev(n10), ev(n11));
            if (try_candidate(pr, M)) return true;
          }
        }
      }
    }
  }
  if (!found_quadratic)
    throw Error(ErrorKind::Unsupported,
                "cannot decide isomorphism: non-split support without rational or quadratic structure");
  return false;
}

inline bool search(const IsoProblem& pr) {
  std::vector<RationalPoint> a1 = anchor_points(pr.cfg1);
  std::vector<RationalPoint> a2 = anchor_points(pr.cfg2);
  if (a1.size() != a2.size()) return false;
  size_t n = a1.size();

  if (n >= 3) {
    for (size_t i = 0; i < a2.size(); ++i)
      for (size_t j = 0; j < a2.size(); ++j)
        for (size_t k = 0; k < a2.size(); ++k) {
          if (i == j || j == k || i == k) continue;
          MobiusMatrix S1 = tri_map(a1[0], a1[1], a1[2]);
          MobiusMatrix S2 = tri_map(a2[i], a2[j], a2[k]);
          if (try_candidate(pr, S1.inverse() * S2)) return true;
        }
    return false;
  }
  if (n == 2) {
    MobiusMatrix U1 = pair_map(a1[0], a1[1]);
    for (int perm = 0; perm < 2; ++perm) {
      MobiusMatrix U2 = perm ? pair_map(a2[1], a2[0]) : pair_map(a2[0], a2[1]);
      if (solve_diagonal(pr, U1, U2)) return true;
    }
    return false;
  }
  if (n == 1) {
    return solve_affine(pr, to_infinity(a1[0]), to_infinity(a2[0]));
  }
  return solve_quadratic_pinned(pr);
}

}  // namespace iso_detail

/// Whether some Moebius change of coordinates matches the boundaries with
/// coefficients and identifies the section tuples up to one global scalar.
inline bool are_isomorphic(const Quasimap& q1, const Quasimap& q2) {
  if (q1.degree != q2.degree || q1.weight != q2.weight ||
      q1.sections.size() != q2.sections.size())
    return false;
  for (size_t i = 0; i < q1.sections.size(); ++i)
    if (q1.sections[i].is_zero() != q2.sections[i].is_zero()) return false;
  if (q1.boundary.degree() != q2.boundary.degree()) return false;

  // boundary coefficient profile
  auto profile = [](const QDivisor& d) {
    std::vector<std::pair<Rat, int>> p;
    for (const auto& t : d.terms()) p.emplace_back(t.coeff, t.form.degree);
    std::sort(p.begin(), p.end(), [](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first < y.first;
      return x.second < y.second;
    });
    return p;
  };
  if (profile(q1.boundary) != profile(q2.boundary)) return false;

  BForm g1 = gcd_many(q1.sections);
  BForm g2 = gcd_many(q2.sections);
  if (g1.degree != g2.degree) return false;
  bool constant = (g1.degree == q1.degree);

  if (iso_detail::verify(q1, q2, MobiusMatrix::identity())) return true;

  if (constant) {
    // the constant values live in the fixed target; no coordinate change
    // can move them
    auto v1 = constant_value(q1.data(), g1);
    auto v2 = constant_value(q2.data(), g2);
    size_t pivot = 0;
    while (pivot < v1->size() && (*v1)[pivot] == 0 && (*v2)[pivot] == 0) ++pivot;
    if (pivot == v1->size()) return false;
    if ((*v1)[pivot] == 0 || (*v2)[pivot] == 0) return false;
    Rat ratio = (*v1)[pivot] / (*v2)[pivot];
    for (size_t i = 0; i < v1->size(); ++i)
      if ((*v1)[i] != ratio * (*v2)[i]) return false;
  }

  iso_detail::IsoProblem pr{q1, q2, iso_detail::build_config(q1, !constant),
                            iso_detail::build_config(q2, !constant), constant};

  // tag profiles must match
  for (const auto& t1 : pr.cfg1) {
    size_t c1 = 0, c2 = 0;
    for (const auto& s : pr.cfg1) c1 += t1.same_tag(s);
    for (const auto& s : pr.cfg2) c2 += t1.same_tag(s);
    if (c1 != c2) return false;
  }
  if (pr.cfg1.size() != pr.cfg2.size()) return false;

  return iso_detail::search(pr);
}

}  // namespace qmapk
