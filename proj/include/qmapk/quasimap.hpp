#pragma once

// The quasimap stability calculus on P^1: construction, fixed/movable
// decomposition, delta and beta invariants, K-stability classification at
// any weight via Veronese rescaling, canonical point degenerations, and
// isomorphism testing.
//
// Classification always goes through the inequality
//     max multiplicity of (B + u B') vs mu/2,
// which is the delta criterion after rescaling the weight below 1 - v/2;
// the literal delta invariant is reported separately because it
// deliberately disagrees with the classification at large weight.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmapk/divisor.hpp"
#include "qmapk/ideal.hpp"

namespace qmapk {

enum class StabilityKind { NotFano, Unstable, Semistable, Polystable, Stable };

inline const char* stability_name(StabilityKind k) {
  switch (k) {
    case StabilityKind::NotFano: return "NotFano";
    case StabilityKind::Unstable: return "Unstable";
    case StabilityKind::Semistable: return "Semistable";
    case StabilityKind::Polystable: return "Polystable";
    case StabilityKind::Stable: return "Stable";
  }
  return "?";
}

template <class K>
struct StabilityWitness {
  BinaryForm<K> cluster;
  K mult;
};

template <class K>
struct Classification {
  StabilityKind kind;
  std::optional<StabilityWitness<K>> witness;  // critical cluster when not Stable

  bool semistable_or_better() const {
    return kind == StabilityKind::Semistable || kind == StabilityKind::Polystable ||
           kind == StabilityKind::Stable;
  }
};

using StabilityClass = Classification<Rat>;

// ---- field-generic kernel ---------------------------------------------------
// Instantiated at Q for quasimaps and at Q(t) for generic fibers of
// one-parameter families.

template <class K>
struct QmapData {
  int degree = 1;
  K weight = FieldOps<K>::one();
  std::vector<BinaryForm<K>> sections;
  QDiv<K> boundary;
};

template <class K>
BinaryForm<K> fixed_part_form(const QmapData<K>& q) {
  return gcd_many(q.sections);
}

/// B + u * (fixed part), the divisor every stability decision reads.
template <class K>
QDiv<K> twisted_boundary(const QmapData<K>& q, const BinaryForm<K>& gcd) {
  if (gcd.degree == 0) return q.boundary;
  QDiv<K> fixed = divisor_of(gcd);
  return combine(q.boundary, fixed, FieldOps<K>::one(), q.weight);
}

template <class K>
K mu_of(const QmapData<K>& q) {
  return q.boundary.degree() + q.weight * K(static_cast<long>(q.degree));
}

/// The constant value in P^N when the movable part is trivial.
template <class K>
std::optional<std::vector<K>> constant_value(const QmapData<K>& q, const BinaryForm<K>& gcd) {
  if (gcd.degree != q.degree) return std::nullopt;
  std::vector<K> v;
  for (const auto& f : q.sections) {
    if (f.is_zero()) {
      v.push_back(FieldOps<K>::zero());
      continue;
    }
    BinaryForm<K> h = form_div_exact(f, gcd);
    v.push_back(h.c[0]);
  }
  return v;
}

template <class K>
Classification<K> classify_kernel(const QmapData<K>& q) {
  const K two(2);
  BinaryForm<K> g = fixed_part_form(q);
  QDiv<K> twisted = twisted_boundary(q, g);
  K mu = mu_of(q);
  auto [mmax, wform] = twisted.max_multiplicity();
  std::optional<StabilityWitness<K>> witness;
  if (wform) witness = StabilityWitness<K>{*wform, mmax};

  if (FieldOps<K>::cmp(mu, two) >= 0 || FieldOps<K>::cmp(mmax, FieldOps<K>::one()) >= 0)
    return {StabilityKind::NotFano, witness};

  K half_mu = mu / two;
  int c = FieldOps<K>::cmp(mmax, half_mu);
  if (c > 0) return {StabilityKind::Unstable, witness};
  if (c < 0) return {StabilityKind::Stable, std::nullopt};

  // Tie at mu/2. Polystable exactly for a constant quasimap whose twisted
  // boundary is mu/2 on two geometric points: two degree-1 clusters or one
  // squarefree degree-2 cluster, nothing else.
  bool constant = (g.degree == q.degree);
  if (constant) {
    int support_degree = 0;
    bool balanced = true;
    for (const auto& t : twisted.terms()) {
      if (t.coeff != half_mu) {
        balanced = false;
        break;
      }
      support_degree += t.form.degree;
    }
    if (balanced && support_degree == 2) return {StabilityKind::Polystable, witness};
  }
  return {StabilityKind::Semistable, witness};
}

// ---- the quasimap over Q ----------------------------------------------------

struct Quasimap {
  int degree = 1;           // m
  Rat weight = 1;           // u > 0
  std::vector<BForm> sections;
  QDivisor boundary;        // B, effective
  unsigned denom_bound = 1; // r with r*B integral
  std::optional<std::vector<HomPoly>> target;

  QmapData<Rat> data() const { return {degree, weight, sections, boundary}; }
};

struct NumericInvariants {
  Rat mu;
  Rat v;
  int fixed_degree = 0;
  int movable_degree = 0;
};

struct DegenerationReport {
  RationalPoint center;
  Quasimap central_fiber;
  Rat beta;
  bool product_type = false;
};

inline Quasimap make_quasimap(int m, const Rat& u, std::vector<BForm> sections,
                              QDivisor boundary, unsigned r,
                              std::optional<std::vector<HomPoly>> target = std::nullopt) {
  if (m < 1) throw Error(ErrorKind::DegenerateInput, "degree must be positive");
  if (u <= 0) throw Error(ErrorKind::DegenerateInput, "weight must be positive");
  if (r < 1) throw Error(ErrorKind::DegenerateInput, "denominator bound must be positive");
  if (sections.empty()) throw Error(ErrorKind::DegenerateInput, "no sections");
  bool any = false;
  for (const auto& f : sections) {
    if (f.degree != m)
      throw Error(ErrorKind::DegenerateInput, "section degree differs from quasimap degree");
    any = any || !f.is_zero();
  }
  if (!any) throw Error(ErrorKind::DegenerateInput, "all sections vanish");
  if (!boundary.is_effective())
    throw Error(ErrorKind::DegenerateInput, "boundary divisor is not effective");
  for (const auto& t : boundary.terms())
    if (!is_integer(t.coeff * Rat(static_cast<long>(r))))
      throw Error(ErrorKind::DegenerateInput, "r*B is not an integral divisor");
  if (target) {
    if (!evaluate_ideal(*target, sections))
      throw Error(ErrorKind::TargetViolation, "sections do not factor through the target cone");
  }
  Quasimap q;
  q.degree = m;
  q.weight = u;
  q.sections = std::move(sections);
  q.boundary = std::move(boundary);
  q.denom_bound = r;
  q.target = std::move(target);
  return q;
}

inline std::pair<QDivisor, int> fixed_movable(const Quasimap& q) {
  BForm g = fixed_part_form(q.data());
  QDivisor fixed = g.degree == 0 ? QDivisor::zero() : divisor_of(g);
  return {fixed, q.degree - g.degree};
}

inline std::pair<bool, std::optional<std::vector<Rat>>> is_constant(const Quasimap& q) {
  BForm g = fixed_part_form(q.data());
  auto v = constant_value(q.data(), g);
  if (!v) return {false, std::nullopt};
  return {true, v};
}

inline NumericInvariants invariants(const Quasimap& q) {
  NumericInvariants out;
  out.mu = mu_of(q.data());
  out.v = Rat(2) - out.mu;
  BForm g = fixed_part_form(q.data());
  out.fixed_degree = g.degree;
  out.movable_degree = q.degree - g.degree;
  return out;
}

/// Log Fano test: (P^1, B + uD) klt for the general member D, i.e. mu < 2,
/// every multiplicity of B + uB' below 1, and u < 1 when the movable part
/// actually contributes points.
inline bool is_log_fano(const Quasimap& q) {
  QmapData<Rat> d = q.data();
  Rat mu = mu_of(d);
  if (mu >= 2) return false;
  BForm g = fixed_part_form(d);
  QDivisor twisted = twisted_boundary(d, g);
  if (twisted.max_multiplicity().first >= 1) return false;
  if (g.degree < q.degree && q.weight >= 1) return false;
  return true;
}

/// The literal delta invariant of the paperless large-weight convention:
/// zero when the quasimap is not log Fano, otherwise the minimum of
/// 2(1-u)/v over movable points and 2(1-mult)/v over clusters of B + uB'.
inline Rat delta(const Quasimap& q) {
  if (!is_log_fano(q)) return 0;
  QmapData<Rat> d = q.data();
  Rat mu = mu_of(d);
  Rat v = Rat(2) - mu;
  BForm g = fixed_part_form(d);
  QDivisor twisted = twisted_boundary(d, g);
  std::optional<Rat> best;
  auto consider = [&](const Rat& value) {
    if (!best || value < *best) best = value;
  };
  if (g.degree < q.degree) consider(Rat(2) * (Rat(1) - q.weight) / v);
  for (const auto& t : twisted.terms()) consider(Rat(2) * (Rat(1) - t.coeff) / v);
  if (!best) consider(Rat(2) / v);  // unreachable: mu > 0 forces support
  return *best;
}

/// beta(p) = mu/2 - mult_p(B + uB'); its sign is the sign of the
/// Donaldson-Futaki invariant of the degeneration at p.
inline Rat beta_at(const Quasimap& q, const RationalPoint& p) {
  if (!is_log_fano(q))
    throw Error(ErrorKind::NotFano, "beta is defined for log Fano quasimaps only");
  QmapData<Rat> d = q.data();
  Rat mu = mu_of(d);
  BForm g = fixed_part_form(d);
  QDivisor twisted = twisted_boundary(d, g);
  return mu / 2 - twisted.multiplicity_at(p);
}

inline StabilityClass classify(const Quasimap& q) { return classify_kernel(q.data()); }

// ---- Veronese rescaling -------------------------------------------------

namespace detail {

inline void monomials_rec(std::vector<std::vector<unsigned>>& out, std::vector<unsigned>& cur,
                          size_t pos, unsigned remaining) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = static_cast<int>(remaining); e >= 0; --e) {
    cur[pos] = static_cast<unsigned>(e);
    monomials_rec(out, cur, pos + 1, remaining - static_cast<unsigned>(e));
  }
}

/// Exponent vectors of total degree l in nvars variables, descending lex.
inline std::vector<std::vector<unsigned>> monomial_exponents(size_t nvars, unsigned l) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(nvars, 0);
  monomials_rec(out, cur, 0, l);
  return out;
}

inline unsigned long binom(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  unsigned long r = 1;
  for (unsigned long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace detail

/// Sections become all degree-l monomials in the old sections, degree
/// becomes l*m, weight u/l; the boundary is untouched. Classification is
/// invariant under this operation, the literal delta is not.
inline Quasimap rescale(const Quasimap& q, unsigned l) {
  if (l < 1) throw Error(ErrorKind::DegenerateInput, "rescale exponent must be >= 1");
  if (l == 1) return q;
  auto expos = detail::monomial_exponents(q.sections.size(), l);
  std::vector<BForm> out;
  out.reserve(expos.size());
  for (const auto& e : expos) {
    BForm prod(0, {Rat(1)});
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) prod = form_mul(prod, form_pow(q.sections[i], e[i]));
    if (prod.degree != q.degree * static_cast<int>(l)) prod = BForm::zero(q.degree * l);
    out.push_back(std::move(prod));
  }
  Quasimap r = q;
  r.degree = q.degree * static_cast<int>(l);
  r.weight = q.weight / Rat(static_cast<long>(l));
  r.sections = std::move(out);
  r.target = std::nullopt;  // the Veronese re-embeds the target; generators do not carry over
  return r;
}

/// Inverts rescale when possible: reconstructs q with rescale(q, l)
/// proportional to qp, per the ratio construction of the Veronese
/// factorization. Returns nullopt when the Veronese relations fail.
inline std::optional<Quasimap> unrescale(const Quasimap& qp, unsigned l) {
  if (l < 1) throw Error(ErrorKind::DegenerateInput, "unrescale exponent must be >= 1");
  if (l == 1) return qp;
  if (qp.degree % static_cast<int>(l) != 0)
    throw Error(ErrorKind::DegenerateInput, "degree not divisible by the Veronese exponent");
  size_t count = qp.sections.size();
  size_t nvars = 0;
  bool found = false;
  for (size_t n = 1; n <= count; ++n) {
    unsigned long c = detail::binom(n - 1 + l, l);
    if (c == count) {
      nvars = n;
      found = true;
      break;
    }
    if (c > count) break;
  }
  if (!found)
    throw Error(ErrorKind::DegenerateInput, "section count is not a Veronese dimension");
  int m = qp.degree / static_cast<int>(l);
  auto expos = detail::monomial_exponents(nvars, l);
  auto index_of = [&](const std::vector<unsigned>& e) -> size_t {
    for (size_t i = 0; i < expos.size(); ++i)
      if (expos[i] == e) return i;
    throw Error(ErrorKind::DegenerateInput, "monomial index lookup failed");
  };

  // Pivot: a coordinate whose pure l-th power section is nonzero.
  size_t pivot = nvars;
  for (size_t j = 0; j < nvars; ++j) {
    std::vector<unsigned> e(nvars, 0);
    e[j] = l;
    if (!qp.sections[index_of(e)].is_zero()) {
      pivot = j;
      break;
    }
  }
  if (pivot == nvars) return std::nullopt;

  std::vector<unsigned> epiv(nvars, 0);
  epiv[pivot] = l;
  const BForm& Fp = qp.sections[index_of(epiv)];
  // The pure power slot must be an l-th power at the divisor level; the
  // scalar is free because a Veronese tuple is only defined up to scale.
  std::optional<BForm> root = divisor_root(Fp, l);
  if (!root) return std::nullopt;
  BForm fpiv = *root;
  BForm fpl = form_pow(fpiv, l);
  Rat lambda = Fp.c[Fp.x_ord()] / fpl.c[Fp.x_ord()];
  if (form_scale(fpl, lambda) != Fp) return std::nullopt;

  std::vector<BForm> secs(nvars, BForm::zero(m));
  BForm denom = form_scale(form_pow(fpiv, l - 1), lambda);
  for (size_t i = 0; i < nvars; ++i) {
    if (i == pivot) {
      secs[i] = fpiv;
      continue;
    }
    std::vector<unsigned> e(nvars, 0);
    e[pivot] = l - 1;
    e[i] = 1;
    const BForm& Gi = qp.sections[index_of(e)];
    if (Gi.is_zero()) continue;
    try {
      secs[i] = form_div_exact(Gi, denom);
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  Quasimap cand;
  try {
    cand = make_quasimap(m, qp.weight * Rat(static_cast<long>(l)), secs, qp.boundary,
                         qp.denom_bound);
  } catch (const Error&) {
    return std::nullopt;
  }
  Quasimap re = rescale(cand, l);
  for (size_t i = 0; i < expos.size(); ++i) {
    BForm lhs = form_scale(re.sections[i], lambda);
    if (lhs != qp.sections[i]) return std::nullopt;
  }
  return cand;
}

inline bool are_isomorphic(const Quasimap& q1, const Quasimap& q2);

/// Transport of the whole quasimap by substitution: sections composed with
/// the matrix (no per-section normalization), boundary clusters moved along.
inline Quasimap transport(const Quasimap& q, const MobiusMatrix& mat) {
  Quasimap out = q;
  for (auto& f : out.sections)
    if (!f.is_zero()) f = apply_mobius_raw(f, mat);
  out.boundary = apply_mobius(q.boundary, mat);
  return out;
}

/// Gm-degeneration of q at the point p: the central fiber of the canonical
/// quasimap structure on the special test configuration that freezes p.
/// With p moved to [0:1], the central fiber is the constant quasimap at the
/// movable map's value at p, its fixed part sits on {0, infinity}, and the
/// boundary degenerates to its multiplicity split between 0 and infinity.
inline DegenerationReport degenerate_at(const Quasimap& q, const RationalPoint& p) {
  if (!is_log_fano(q))
    throw Error(ErrorKind::NotFano, "degenerations are defined for log Fano quasimaps only");
  MobiusMatrix to_p = p.infinite ? MobiusMatrix::swap_xy()
                                 : MobiusMatrix(Rat(1), p.a, Rat(0), Rat(1));
  Quasimap moved = transport(q, to_p);

  const int m = q.degree;
  int mu_min = m + 1;
  for (const auto& f : moved.sections)
    if (!f.is_zero()) mu_min = std::min(mu_min, f.x_ord());

  std::vector<BForm> central;
  central.reserve(moved.sections.size());
  for (const auto& f : moved.sections) {
    std::vector<Rat> c(m + 1, Rat(0));
    if (!f.is_zero()) c[mu_min] = f.c[mu_min];
    central.emplace_back(m, std::move(c));
  }

  Rat bmult = q.boundary.multiplicity_at(p);
  Rat brest = q.boundary.degree() - bmult;
  std::vector<std::pair<BForm, Rat>> bpairs;
  if (bmult != 0) bpairs.emplace_back(form_x(), bmult);
  if (brest != 0) bpairs.emplace_back(form_y(), brest);
  QDivisor central_boundary = QDivisor::from_pairs(bpairs);

  DegenerationReport rep;
  rep.center = p;
  rep.central_fiber = make_quasimap(m, q.weight, central, central_boundary, q.denom_bound,
                                    q.target);
  rep.beta = beta_at(q, p);

  // Product type: the central fiber reproduces q. Exact scalar equality in
  // the moved coordinates catches Gm-invariant quasimaps without a search.
  bool product = false;
  {
    const auto& a = rep.central_fiber.sections;
    const auto& b = moved.sections;
    std::optional<Rat> scale;
    bool match = rep.central_fiber.boundary == moved.boundary;
    for (size_t i = 0; match && i < a.size(); ++i) {
      if (a[i].is_zero() != b[i].is_zero()) match = false;
      if (!match || a[i].is_zero()) continue;
      if (!scale) {
        int k = b[i].x_ord();
        if (a[i].c[k] == 0) { match = false; continue; }
        scale = a[i].c[k] / b[i].c[k];
      }
      if (form_scale(b[i], *scale) != a[i]) match = false;
    }
    product = match && scale.has_value();
  }
  if (!product && fixed_part_form(q.data()).degree == q.degree)
    product = are_isomorphic(rep.central_fiber, q);
  rep.product_type = product;
  return rep;
}

}  // namespace qmapk

#include "qmapk/isomorphism.hpp"
