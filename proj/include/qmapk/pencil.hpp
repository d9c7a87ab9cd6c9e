#pragma once

// CM degrees of pencils of quasimaps: families over P^1 whose total space is
// P^1 x P^1, presented by bihomogeneous sections. The CM degree is the exact
// intersection number -(K_{Y/C} + B + uL)^2 on divisor classes.

#include "qmapk/quasimap.hpp"

namespace qmapk {

/// Bihomogeneous form of bidegree (deg_x in (x,y), deg_s in (s,t));
/// c[i][j] multiplies x^i y^(deg_x - i) s^j t^(deg_s - j).
struct BiForm {
  int deg_x = 0;
  int deg_s = 0;
  std::vector<std::vector<Rat>> c;

  BiForm() : c(1, std::vector<Rat>(1, Rat(0))) {}
  BiForm(int dx, int ds, std::vector<std::vector<Rat>> coeffs)
      : deg_x(dx), deg_s(ds), c(std::move(coeffs)) {
    if (static_cast<int>(c.size()) != dx + 1)
      throw Error(ErrorKind::DegenerateInput, "x-coefficient count does not match bidegree");
    for (const auto& row : c)
      if (static_cast<int>(row.size()) != ds + 1)
        throw Error(ErrorKind::DegenerateInput, "s-coefficient count does not match bidegree");
  }

  bool is_zero() const {
    for (const auto& row : c)
      for (const auto& v : row)
        if (v != 0) return false;
    return true;
  }

  /// Restriction to the fiber over [s0:t0], a binary form in (x,y).
  BForm fiber(const RationalPoint& p) const {
    auto [s0, t0] = p.infinite ? std::make_pair(Rat(1), Rat(0)) : std::make_pair(p.a, Rat(1));
    std::vector<Rat> out(deg_x + 1, Rat(0));
    for (int i = 0; i <= deg_x; ++i) {
      BForm slice(deg_s, c[i]);
      out[i] = slice.eval(s0, t0);
    }
    return BForm(deg_x, std::move(out));
  }

  /// The (s,t) slice at a fixed x-power, as a binary form in (s,t).
  BForm base_slice(int xpow) const { return BForm(deg_s, c[xpow]); }
};

/// Divisor class a * (fiber of the base projection) + b * (horizontal class)
/// on P^1 x P^1; intersection is (a,b).(a',b') = a b' + a' b.
struct DivClass {
  Rat a;
  Rat b;

  friend DivClass operator+(const DivClass& u, const DivClass& v) {
    return {u.a + v.a, u.b + v.b};
  }
  DivClass scaled(const Rat& s) const { return {a * s, b * s}; }
  friend Rat intersect(const DivClass& u, const DivClass& v) { return u.a * v.b + u.b * v.a; }
};

struct PencilFamily {
  int fiber_degree = 1;   // m
  int base_degree = 0;    // k
  Rat weight = 1;         // u
  std::vector<BiForm> sections;             // bidegree (m, k)
  std::vector<std::pair<BiForm, Rat>> boundary;  // bidegrees (b_i, c_i)
};

inline PencilFamily make_pencil(int m, int k, const Rat& u, std::vector<BiForm> sections,
                                std::vector<std::pair<BiForm, Rat>> boundary) {
  if (m < 1 || k < 0) throw Error(ErrorKind::DegenerateInput, "invalid pencil bidegree");
  if (u <= 0) throw Error(ErrorKind::DegenerateInput, "weight must be positive");
  if (sections.empty()) throw Error(ErrorKind::DegenerateInput, "no sections");
  for (const auto& f : sections)
    if (f.deg_x != m || f.deg_s != k)
      throw Error(ErrorKind::DegenerateInput, "section bidegree mismatch");
  // No fiber may kill every section: the (s,t)-content of all slices of all
  // sections must be constant.
  std::vector<BForm> slices;
  for (const auto& f : sections)
    for (int i = 0; i <= f.deg_x; ++i) {
      BForm s = f.base_slice(i);
      if (!s.is_zero()) slices.push_back(s);
    }
  if (slices.empty()) throw Error(ErrorKind::DegenerateInput, "all sections vanish");
  if (k > 0 && gcd_many(slices).degree > 0)
    throw Error(ErrorKind::DegenerateInput, "all sections vanish on a common fiber");
  for (const auto& [form, coeff] : boundary) {
    if (form.is_zero()) throw Error(ErrorKind::DegenerateInput, "zero boundary form");
    if (coeff <= 0) throw Error(ErrorKind::DegenerateInput, "boundary coefficient must be positive");
  }
  PencilFamily p;
  p.fiber_degree = m;
  p.base_degree = k;
  p.weight = u;
  p.sections = std::move(sections);
  p.boundary = std::move(boundary);
  return p;
}

/// -(K_{Y/C} + B + uL)^2 with K_{Y/C} = (-2,0), L = (m,k), B = sum c_i (b_i, c_i).
inline Rat cm_degree(const PencilFamily& p) {
  DivClass total{Rat(-2), Rat(0)};
  for (const auto& [form, coeff] : p.boundary)
    total = total + DivClass{Rat(form.deg_x), Rat(form.deg_s)}.scaled(coeff);
  total = total + DivClass{Rat(p.fiber_degree), Rat(p.base_degree)}.scaled(p.weight);
  return -intersect(total, total);
}

/// Restriction of the pencil to one fiber, as a quasimap.
inline Quasimap fiber_at(const PencilFamily& p, const RationalPoint& pt) {
  std::vector<BForm> secs;
  bool any = false;
  for (const auto& f : p.sections) {
    BForm s = f.fiber(pt);
    any = any || !s.is_zero();
    secs.push_back(std::move(s));
  }
  if (!any) throw Error(ErrorKind::DegenerateInput, "all sections vanish on this fiber");
  std::vector<std::pair<BForm, Rat>> bpairs;
  Int rl(1);
  for (const auto& [form, coeff] : p.boundary) {
    BForm b = form.fiber(pt);
    if (b.is_zero())
      throw Error(ErrorKind::DegenerateInput, "boundary contains this fiber as a component");
    bpairs.emplace_back(b, coeff);
    mpz_lcm(rl.get_mpz_t(), rl.get_mpz_t(), coeff.get_den().get_mpz_t());
  }
  return make_quasimap(p.fiber_degree, p.weight, secs, QDivisor::from_pairs(bpairs),
                       static_cast<unsigned>(rl.get_ui()));
}

struct ProbeSample {
  RationalPoint point;
  bool degenerate = false;
  StabilityKind cls = StabilityKind::NotFano;
  bool hypothesis_ok = false;
  Rat mu_t;
};

struct NefnessReport {
  std::vector<ProbeSample> samples;
  bool hypothesis_met = false;   // every sampled fiber semistable + weight bound
  Rat cm;
  bool consistent = true;        // cm >= 0 whenever the hypothesis held
};

/// Samples fibers, checks the weight hypothesis 0 < u < mu_t/2 at each one,
/// and asserts nonnegativity of the CM degree when the hypothesis holds.
inline NefnessReport nefness_probe(const PencilFamily& p,
                                   const std::vector<RationalPoint>& sample_points) {
  NefnessReport rep;
  rep.cm = cm_degree(p);
  bool all_ok = true;
  for (const auto& pt : sample_points) {
    ProbeSample s;
    s.point = pt;
    try {
      Quasimap q = fiber_at(p, pt);
      s.cls = classify(q).kind;
      s.mu_t = mu_of(q.data());
      s.hypothesis_ok = p.weight < s.mu_t / 2;
    } catch (const Error&) {
      s.degenerate = true;
    }
    bool ok = !s.degenerate && s.hypothesis_ok &&
              (s.cls == StabilityKind::Semistable || s.cls == StabilityKind::Polystable ||
               s.cls == StabilityKind::Stable);
    all_ok = all_ok && ok;
    rep.samples.push_back(std::move(s));
  }
  rep.hypothesis_met = all_ok && !sample_points.empty();
  if (rep.hypothesis_met) rep.consistent = rep.cm >= 0;
  return rep;
}

/// Deterministic default sample sequence: inf, 0, 1, -1, 2, -2, 1/2, ...
inline std::vector<RationalPoint> default_sample_points(unsigned n) {
  std::vector<RationalPoint> pts;
  if (n > 0) pts.push_back(RationalPoint::infinity());
  long v = 0;
  while (pts.size() < n) {
    if (v == 0) {
      pts.push_back(RationalPoint::affine(Rat(0)));
      v = 1;
      continue;
    }
    pts.push_back(RationalPoint::affine(Rat(v)));
    if (pts.size() < n) pts.push_back(RationalPoint::affine(Rat(-v)));
    if (pts.size() < n) pts.push_back(RationalPoint::affine(Rat(1, v + 1)));
    ++v;
  }
  return pts;
}

}  // namespace qmapk
