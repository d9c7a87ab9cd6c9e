#pragma once

// Weierstrass elliptic surfaces over P^1: discriminant, Kodaira fiber
// profile from the (ord A, ord B, ord Delta) table, discriminant/moduli
// divisors of the canonical bundle formula, the associated j-quasimap with
// sections (A^3, 4A^3 + 27B^2), and the uniform adiabatic stability test.

#include "qmapk/quasimap.hpp"

namespace qmapk {

struct WeierstrassModel {
  int k = 1;      // A has degree 4k, B degree 6k
  BForm A;
  BForm B;
};

inline BForm discriminant(const WeierstrassModel& w) {
  BForm d = form_add(form_scale(form_pow(w.A, 3), Rat(4)), form_scale(form_pow(w.B, 2), Rat(27)));
  if (d.is_zero())
    throw Error(ErrorKind::DegenerateModel, "discriminant vanishes identically");
  return d;
}

inline WeierstrassModel make_weierstrass(int k, BForm A, BForm B) {
  if (k < 1) throw Error(ErrorKind::DegenerateModel, "k must be positive");
  if (A.degree != 4 * k || B.degree != 6 * k)
    throw Error(ErrorKind::DegenerateModel, "coefficient degrees must be 4k and 6k");
  WeierstrassModel w{k, std::move(A), std::move(B)};
  discriminant(w);  // rejects 4A^3 + 27B^2 = 0
  return w;
}

enum class KodairaType { In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };

inline const char* kodaira_name(KodairaType t) {
  switch (t) {
    case KodairaType::In: return "I_n";
    case KodairaType::II: return "II";
    case KodairaType::III: return "III";
    case KodairaType::IV: return "IV";
    case KodairaType::I0star: return "I_0*";
    case KodairaType::Instar: return "I_n*";
    case KodairaType::IVstar: return "IV*";
    case KodairaType::IIIstar: return "III*";
    case KodairaType::IIstar: return "II*";
  }
  return "?";
}

inline Rat kodaira_lct(KodairaType t) {
  switch (t) {
    case KodairaType::In: return Rat(1);
    case KodairaType::II: return Rat(5, 6);
    case KodairaType::III: return Rat(3, 4);
    case KodairaType::IV: return Rat(2, 3);
    case KodairaType::I0star:
    case KodairaType::Instar: return Rat(1, 2);
    case KodairaType::IVstar: return Rat(1, 3);
    case KodairaType::IIIstar: return Rat(1, 4);
    case KodairaType::IIstar: return Rat(1, 6);
  }
  return Rat(0);
}

constexpr int kOrdInfinity = -1;  // ord of the zero form

struct KodairaEntry {
  BForm cluster;
  int ord_a = 0;   // kOrdInfinity when A = 0
  int ord_b = 0;   // kOrdInfinity when B = 0
  int ord_d = 0;
  int n = 0;       // the n of I_n / I_n*, zero otherwise
  KodairaType type = KodairaType::In;
  Rat lct = 1;
};

using KodairaProfile = std::vector<KodairaEntry>;

namespace elliptic_detail {

struct ClusterOrders {
  BForm cluster;
  int ord_a, ord_b, ord_d;
};

inline std::vector<ClusterOrders> cluster_orders(const WeierstrassModel& w) {
  BForm delta = discriminant(w);
  std::vector<BForm> inputs;
  int ia = -1, ib = -1;
  if (!w.A.is_zero()) { ia = static_cast<int>(inputs.size()); inputs.push_back(w.A); }
  if (!w.B.is_zero()) { ib = static_cast<int>(inputs.size()); inputs.push_back(w.B); }
  int id = static_cast<int>(inputs.size());
  inputs.push_back(delta);
  CoprimeBasis<Rat> cb = coprime_squarefree_basis(inputs);
  std::vector<ClusterOrders> out;
  for (size_t j = 0; j < cb.basis.size(); ++j) {
    int oa = ia < 0 ? kOrdInfinity : static_cast<int>(cb.expo[ia][j]);
    int ob = ib < 0 ? kOrdInfinity : static_cast<int>(cb.expo[ib][j]);
    int od = static_cast<int>(cb.expo[id][j]);
    out.push_back({cb.basis[j], oa, ob, od});
  }
  return out;
}

inline bool ord_ge(int ord, int bound) { return ord == kOrdInfinity || ord >= bound; }
inline bool ord_eq(int ord, int v) { return ord == v; }

}  // namespace elliptic_detail

inline bool is_minimal(const WeierstrassModel& w) {
  for (const auto& co : elliptic_detail::cluster_orders(w))
    if (elliptic_detail::ord_ge(co.ord_a, 4) && elliptic_detail::ord_ge(co.ord_b, 6))
      return false;
  return true;
}

/// Divides (A, B) by (g^4, g^6) for the largest g; k drops by deg g.
inline WeierstrassModel minimalize(const WeierstrassModel& w) {
  BForm g(0, {Rat(1)});
  for (const auto& co : elliptic_detail::cluster_orders(w)) {
    int ea = co.ord_a == kOrdInfinity ? INT_MAX : co.ord_a / 4;
    int eb = co.ord_b == kOrdInfinity ? INT_MAX : co.ord_b / 6;
    int e = std::min(ea, eb);
    if (e > 0) g = form_mul(g, form_pow(co.cluster, static_cast<unsigned>(e)));
  }
  if (g.degree == 0) return w;
  int kp = w.k - g.degree;
  if (kp < 1)
    throw Error(ErrorKind::DegenerateModel, "minimalization would contract the whole surface");
  BForm A = w.A.is_zero() ? BForm::zero(4 * kp) : form_div_exact(w.A, form_pow(g, 4));
  BForm B = w.B.is_zero() ? BForm::zero(6 * kp) : form_div_exact(w.B, form_pow(g, 6));
  return make_weierstrass(kp, A, B);
}

/// Kodaira types and log canonical thresholds at the singular fibers,
/// keyed by the order triple; characteristic zero, so no wild cases.
inline KodairaProfile kodaira_profile(const WeierstrassModel& w) {
  if (!is_minimal(w))
    throw Error(ErrorKind::PreconditionViolated, "model is not minimal");
  using namespace elliptic_detail;
  KodairaProfile out;
  int total = 0;
  for (const auto& co : cluster_orders(w)) {
    if (co.ord_d == 0) continue;
    KodairaEntry e;
    e.cluster = co.cluster;
    e.ord_a = co.ord_a;
    e.ord_b = co.ord_b;
    e.ord_d = co.ord_d;
    if (ord_eq(co.ord_a, 0) && ord_eq(co.ord_b, 0)) {
      e.type = KodairaType::In;
      e.n = co.ord_d;
    } else if (ord_eq(co.ord_b, 1)) {
      e.type = KodairaType::II;
    } else if (ord_eq(co.ord_a, 1)) {
      e.type = KodairaType::III;
    } else if (ord_eq(co.ord_b, 2)) {
      e.type = KodairaType::IV;
    } else if (ord_eq(co.ord_a, 2) && ord_eq(co.ord_b, 3) && co.ord_d > 6) {
      e.type = KodairaType::Instar;
      e.n = co.ord_d - 6;
    } else if (co.ord_d == 6) {
      e.type = KodairaType::I0star;
    } else if (ord_eq(co.ord_b, 4)) {
      e.type = KodairaType::IVstar;
    } else if (ord_eq(co.ord_a, 3)) {
      e.type = KodairaType::IIIstar;
    } else if (ord_eq(co.ord_b, 5)) {
      e.type = KodairaType::IIstar;
    } else {
      throw Error(ErrorKind::PreconditionViolated, "order triple outside the minimal table");
    }
    e.lct = kodaira_lct(e.type);
    // cross-check: the fixed-part identity min(3 ordA, ordDelta) = 12(1 - lct)
    int fixed = co.ord_a == kOrdInfinity ? co.ord_d : std::min(3 * co.ord_a, co.ord_d);
    if (Rat(fixed) != Rat(12) * (Rat(1) - e.lct))
      throw Error(ErrorKind::PreconditionViolated, "fixed-part identity fails for a cluster");
    total += e.cluster.degree * e.ord_d;
    out.push_back(std::move(e));
  }
  if (total != 12 * w.k)
    throw Error(ErrorKind::PreconditionViolated, "discriminant degree bookkeeping failed");
  return out;
}

/// (discriminant divisor, moduli degree) of the canonical bundle formula.
inline std::pair<QDivisor, Rat> discriminant_divisor(const WeierstrassModel& w) {
  KodairaProfile prof = kodaira_profile(w);
  std::vector<std::pair<BForm, Rat>> pairs;
  Rat fixed_total(0);
  for (const auto& e : prof) {
    Rat c = Rat(1) - e.lct;
    if (c != 0) pairs.emplace_back(e.cluster, c);
    int fixed = e.ord_a == kOrdInfinity ? e.ord_d : std::min(3 * e.ord_a, e.ord_d);
    fixed_total += Rat(e.cluster.degree) * Rat(fixed);
  }
  Rat moduli = (Rat(12 * w.k) - fixed_total) / 12;
  return {QDivisor::from_pairs(pairs), moduli};
}

enum class AdiabaticVerdict { StrictlyStable, StrictlySemistableOnly, Unstable };

inline const char* adiabatic_name(AdiabaticVerdict v) {
  switch (v) {
    case AdiabaticVerdict::StrictlyStable: return "StrictlyStable";
    case AdiabaticVerdict::StrictlySemistableOnly: return "StrictlySemistableOnly";
    case AdiabaticVerdict::Unstable: return "Unstable";
  }
  return "?";
}

/// Uniform adiabatic K-stability on P^1: with S = 1/2 for O(1), the
/// criterion delta(P^1, B, O(1)) > deg(-K - B - M) reads
/// max_p mult_p(B) < (deg B + deg M)/2.
inline AdiabaticVerdict adiabatic_kstable(const WeierstrassModel& w) {
  if (w.k != 1)
    throw Error(ErrorKind::Unsupported,
                "adiabatic criterion is stated for k = 1 (negative Kodaira dimension)");
  auto [disc, moduli] = discriminant_divisor(w);
  Rat bound = (disc.degree() + moduli) / 2;
  Rat top = disc.max_multiplicity().first;
  if (top < bound) return AdiabaticVerdict::StrictlyStable;
  if (top == bound) return AdiabaticVerdict::StrictlySemistableOnly;
  return AdiabaticVerdict::Unstable;
}

/// The j-quasimap [A^3 : 4A^3 + 27B^2] of degree 12k and weight 1/12;
/// u times its fixed part equals the discriminant divisor.
inline Quasimap associated_quasimap(const WeierstrassModel& w) {
  BForm a3 = form_pow(w.A, 3);
  BForm delta = discriminant(w);
  return make_quasimap(12 * w.k, Rat(1, 12), {a3, delta}, QDivisor::zero(), 1);
}

struct EllipticReport {
  int k = 1;                         // of the minimal model analyzed
  KodairaProfile profile;
  QDivisor disc_divisor;
  Rat moduli_degree;
  std::optional<AdiabaticVerdict> adiabatic;  // only for k = 1
  Quasimap associated;
  StabilityClass associated_class;
};

inline EllipticReport elliptic_report(const WeierstrassModel& input) {
  WeierstrassModel w = minimalize(input);
  EllipticReport rep;
  rep.k = w.k;
  rep.profile = kodaira_profile(w);
  auto [disc, moduli] = discriminant_divisor(w);
  rep.disc_divisor = disc;
  rep.moduli_degree = moduli;
  if (w.k == 1) rep.adiabatic = adiabatic_kstable(w);
  rep.associated = associated_quasimap(w);
  rep.associated_class = classify(rep.associated);
  return rep;
}

}  // namespace qmapk
