#pragma once

// Binary forms over an exact field of characteristic zero: normalization,
// gcd with roots-at-infinity bookkeeping, squarefree coprime (gcd-free)
// bases, vanishing orders, l-th roots, and Moebius substitutions.
//
// Multiplicity queries never factor into irreducibles; they go through the
// gcd-free basis, whose elements' geometric roots share a common
// multiplicity vector in every input form.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmapk/ratfunc.hpp"
#include "qmapk/rational.hpp"

namespace qmapk {

// ---- univariate helpers over a field K ------------------------------------

template <class K>
void poly_trim(std::vector<K>& p) {
  while (!p.empty() && FieldOps<K>::is_zero(p.back())) p.pop_back();
}

template <class K>
std::vector<K> poly_mul(const std::vector<K>& a, const std::vector<K>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<K> r(a.size() + b.size() - 1, FieldOps<K>::zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

template <class K>
std::vector<K> poly_divmod(const std::vector<K>& a, const std::vector<K>& b,
                           std::vector<K>& rem) {
  if (b.empty()) throw Error(ErrorKind::DegenerateInput, "polynomial division by zero");
  rem = a;
  poly_trim(rem);
  if (rem.size() < b.size()) return {};
  std::vector<K> q(rem.size() - b.size() + 1, FieldOps<K>::zero());
  const K& lead = b.back();
  while (rem.size() >= b.size() && !rem.empty()) {
    K c = rem.back() / lead;
    size_t shift = rem.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) rem[shift + i] -= c * b[i];
    poly_trim(rem);
  }
  poly_trim(q);
  return q;
}

template <class K>
std::vector<K> poly_gcd(std::vector<K> a, std::vector<K> b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    std::vector<K> r;
    poly_divmod(a, b, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    K inv = FieldOps<K>::one() / a.back();
    for (auto& c : a) c *= inv;
  }
  return a;
}

template <class K>
std::vector<K> poly_derivative(const std::vector<K>& p) {
  std::vector<K> d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * K(static_cast<long>(i)));
  poly_trim(d);
  return d;
}

// ---- binary forms ----------------------------------------------------------

/// Homogeneous form of a fixed degree in (x, y); coefficient i multiplies
/// x^i y^(degree-i). The zero form keeps its nominal degree.
template <class K>
struct BinaryForm {
  int degree = 0;
  std::vector<K> c;  // size degree+1

  BinaryForm() : degree(0), c{FieldOps<K>::zero()} {}
  BinaryForm(int deg, std::vector<K> coeffs) : degree(deg), c(std::move(coeffs)) {
    if (static_cast<int>(c.size()) != degree + 1)
      throw Error(ErrorKind::DegenerateInput, "coefficient count does not match degree");
  }

  static BinaryForm zero(int deg) {
    return BinaryForm(deg, std::vector<K>(deg + 1, FieldOps<K>::zero()));
  }

  bool is_zero() const {
    for (const auto& v : c)
      if (!FieldOps<K>::is_zero(v)) return false;
    return true;
  }

  /// Lowest nonzero x-power: the vanishing order at [0:1]. -1 for zero.
  int x_ord() const {
    for (int i = 0; i <= degree; ++i)
      if (!FieldOps<K>::is_zero(c[i])) return i;
    return -1;
  }

  /// Highest nonzero x-power. -1 for zero.
  int x_deg() const {
    for (int i = degree; i >= 0; --i)
      if (!FieldOps<K>::is_zero(c[i])) return i;
    return -1;
  }

  /// Vanishing order at [1:0].
  int y_ord() const {
    int d = x_deg();
    return d < 0 ? -1 : degree - d;
  }

  K eval(const K& a, const K& b) const {
    // Horner in two stages: f(a,b) = sum c_i a^i b^(m-i).
    K v = FieldOps<K>::zero();
    K ap = FieldOps<K>::one();
    std::vector<K> apow(degree + 1);
    for (int i = 0; i <= degree; ++i) {
      apow[i] = ap;
      ap *= a;
    }
    K bp = FieldOps<K>::one();
    for (int i = degree; i >= 0; --i) {
      v += c[i] * apow[i] * bp;
      bp *= b;
    }
    return v;
  }

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    return a.degree == b.degree && a.c == b.c;
  }
  friend bool operator!=(const BinaryForm& a, const BinaryForm& b) { return !(a == b); }
};

using BForm = BinaryForm<Rat>;

template <class K>
BinaryForm<K> form_add(const BinaryForm<K>& a, const BinaryForm<K>& b) {
  if (a.degree != b.degree)
    throw Error(ErrorKind::DegenerateInput, "degree mismatch in form addition");
  std::vector<K> c(a.c);
  for (int i = 0; i <= a.degree; ++i) c[i] += b.c[i];
  return BinaryForm<K>(a.degree, std::move(c));
}

template <class K>
BinaryForm<K> form_scale(BinaryForm<K> a, const K& s) {
  for (auto& v : a.c) v *= s;
  return a;
}

template <class K>
BinaryForm<K> form_mul(const BinaryForm<K>& a, const BinaryForm<K>& b) {
  std::vector<K> c(a.degree + b.degree + 1, FieldOps<K>::zero());
  for (int i = 0; i <= a.degree; ++i) {
    if (FieldOps<K>::is_zero(a.c[i])) continue;
    for (int j = 0; j <= b.degree; ++j) c[i + j] += a.c[i] * b.c[j];
  }
  return BinaryForm<K>(a.degree + b.degree, std::move(c));
}

template <class K>
BinaryForm<K> form_pow(const BinaryForm<K>& a, unsigned e) {
  BinaryForm<K> r(0, {FieldOps<K>::one()});
  for (unsigned i = 0; i < e; ++i) r = form_mul(r, a);
  return r;
}

/// Exact division; throws DegenerateInput when the division has a remainder.
template <class K>
BinaryForm<K> form_div_exact(const BinaryForm<K>& a, const BinaryForm<K>& b) {
  if (b.is_zero()) throw Error(ErrorKind::DegenerateInput, "form division by zero");
  if (a.is_zero()) return BinaryForm<K>::zero(a.degree - b.degree);
  int ya = a.degree - a.x_deg(), yb = b.degree - b.x_deg();
  int xa = a.x_ord(), xb = b.x_ord();
  if (ya < yb || xa < xb || a.degree < b.degree)
    throw Error(ErrorKind::DegenerateInput, "inexact form division");
  std::vector<K> ua(a.c.begin(), a.c.begin() + a.x_deg() + 1);
  std::vector<K> ub(b.c.begin(), b.c.begin() + b.x_deg() + 1);
  std::vector<K> rem;
  std::vector<K> q = poly_divmod(ua, ub, rem);
  if (!rem.empty()) throw Error(ErrorKind::DegenerateInput, "inexact form division");
  int dq = a.degree - b.degree;
  std::vector<K> c(dq + 1, FieldOps<K>::zero());
  for (size_t i = 0; i < q.size(); ++i) c[i] = q[i];
  return BinaryForm<K>(dq, std::move(c));
}

template <class K>
bool form_divides(const BinaryForm<K>& b, const BinaryForm<K>& a) {
  if (b.is_zero()) return a.is_zero();
  if (a.is_zero()) return true;
  if (b.degree > a.degree) return false;
  try {
    form_div_exact(a, b);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// Canonical representative scaling. Over Q: content one, highest nonzero
// x-coefficient positive. Over Q(t): highest nonzero x-coefficient equal 1.
inline Rat form_normalizer(const std::vector<Rat>& c, int hi) {
  Int lcm_den(1);
  for (const auto& v : c)
    if (v != 0) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), v.get_den().get_mpz_t());
  Int gcd_num(0);
  for (const auto& v : c) {
    if (v == 0) continue;
    Int n = v.get_num() * (lcm_den / v.get_den());
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), n.get_mpz_t());
  }
  Rat lambda(lcm_den, gcd_num);
  lambda.canonicalize();
  if (c[hi] < 0) lambda = -lambda;
  return lambda;
}

inline RatFunc form_normalizer(const std::vector<RatFunc>& c, int hi) {
  return FieldOps<RatFunc>::one() / c[hi];
}

template <class K>
BinaryForm<K> normalize(const BinaryForm<K>& f) {
  if (f.is_zero()) return f;
  return form_scale(f, form_normalizer(f.c, f.x_deg()));
}

template <class K>
BinaryForm<K> normalize(const std::vector<K>& coeffs) {
  if (coeffs.empty()) throw Error(ErrorKind::DegenerateInput, "empty coefficient list");
  return normalize(BinaryForm<K>(static_cast<int>(coeffs.size()) - 1, coeffs));
}

/// True when f and g agree after normalization (equal divisors of equal degree).
template <class K>
bool proportional(const BinaryForm<K>& f, const BinaryForm<K>& g) {
  if (f.degree != g.degree) return false;
  if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
  return normalize(f) == normalize(g);
}

// Convenience constructors over Q for x, y and x - a*y.
inline BForm form_x() { return BForm(1, {Rat(0), Rat(1)}); }
inline BForm form_y() { return BForm(1, {Rat(1), Rat(0)}); }
inline BForm form_linear(const Rat& a) { return BForm(1, {-a, Rat(1)}); }  // x - a y

template <class K>
BinaryForm<K> form_y_k() {
  return BinaryForm<K>(1, {FieldOps<K>::one(), FieldOps<K>::zero()});
}

// ---- gcd with point-at-infinity bookkeeping --------------------------------

template <class K>
BinaryForm<K> gcd_forms(const BinaryForm<K>& f, const BinaryForm<K>& g) {
  if (f.is_zero() && g.is_zero())
    throw Error(ErrorKind::DegenerateInput, "gcd of two zero forms");
  if (f.is_zero()) return normalize(g);
  if (g.is_zero()) return normalize(f);
  int yf = f.degree - f.x_deg(), yg = g.degree - g.x_deg();
  int ypow = std::min(yf, yg);
  std::vector<K> uf(f.c.begin(), f.c.begin() + f.x_deg() + 1);
  std::vector<K> ug(g.c.begin(), g.c.begin() + g.x_deg() + 1);
  std::vector<K> h = poly_gcd(uf, ug);
  int deg = ypow + static_cast<int>(h.size()) - 1;
  std::vector<K> c(deg + 1, FieldOps<K>::zero());
  for (size_t i = 0; i < h.size(); ++i) c[i] = h[i];
  return normalize(BinaryForm<K>(deg, std::move(c)));
}

template <class K>
BinaryForm<K> gcd_many(const std::vector<BinaryForm<K>>& forms) {
  std::optional<BinaryForm<K>> acc;
  for (const auto& f : forms) {
    if (f.is_zero()) continue;
    acc = acc ? gcd_forms(*acc, f) : normalize(f);
  }
  if (!acc) throw Error(ErrorKind::DegenerateInput, "gcd of all-zero list");
  return *acc;
}

// ---- points and Moebius maps ------------------------------------------------

/// Point of P^1 with coordinates in K, stored as [a:1] or [1:0].
template <class K>
struct ProjPoint {
  K a = FieldOps<K>::zero();
  bool infinite = false;

  static ProjPoint affine(const K& v) { return ProjPoint{v, false}; }
  static ProjPoint infinity() { return ProjPoint{FieldOps<K>::zero(), true}; }
  static ProjPoint make(const K& x, const K& y) {
    if (FieldOps<K>::is_zero(y)) {
      if (FieldOps<K>::is_zero(x))
        throw Error(ErrorKind::DegenerateInput, "[0:0] is not a point");
      return infinity();
    }
    return affine(x / y);
  }
  friend bool operator==(const ProjPoint& p, const ProjPoint& q) {
    if (p.infinite != q.infinite) return false;
    return p.infinite || p.a == q.a;
  }
  friend bool operator!=(const ProjPoint& p, const ProjPoint& q) { return !(p == q); }
};

using RationalPoint = ProjPoint<Rat>;

inline std::string point_to_string(const RationalPoint& p) {
  return p.infinite ? "inf" : rat_to_string(p.a);
}

/// Invertible 2x2 matrix acting as substitution (x,y) -> (ax+by, cx+dy);
/// the induced map on points is [x:y] -> [ax+by : cx+dy].
template <class K>
struct Mobius {
  K a, b, c, d;

  Mobius() : a(FieldOps<K>::one()), b(FieldOps<K>::zero()), c(FieldOps<K>::zero()), d(FieldOps<K>::one()) {}
  Mobius(K a_, K b_, K c_, K d_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

  K det() const { return a * d - b * c; }
  bool invertible() const { return !FieldOps<K>::is_zero(det()); }

  Mobius inverse() const {
    K dt = det();
    if (FieldOps<K>::is_zero(dt)) throw Error(ErrorKind::DegenerateInput, "singular Moebius matrix");
    return Mobius(d / dt, -b / dt, -c / dt, a / dt);
  }
  /// Composition as point maps: (m1 * m2)(p) = m1(m2(p)).
  friend Mobius operator*(const Mobius& m, const Mobius& n) {
    return Mobius(m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                  m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d);
  }
  ProjPoint<K> apply(const ProjPoint<K>& p) const {
    K x = p.infinite ? FieldOps<K>::one() : p.a;
    K y = p.infinite ? FieldOps<K>::zero() : FieldOps<K>::one();
    return ProjPoint<K>::make(a * x + b * y, c * x + d * y);
  }
  static Mobius identity() { return Mobius(); }
  static Mobius swap_xy() {
    return Mobius(FieldOps<K>::zero(), FieldOps<K>::one(), FieldOps<K>::one(), FieldOps<K>::zero());
  }
};

using MobiusMatrix = Mobius<Rat>;

/// Raw substitution, no normalization: f(ax+by, cx+dy).
template <class K>
BinaryForm<K> apply_mobius_raw(const BinaryForm<K>& f, const Mobius<K>& mat) {
  if (!mat.invertible()) throw Error(ErrorKind::DegenerateInput, "singular Moebius matrix");
  const int m = f.degree;
  // Power tables for (a x + b y) and (c x + d y).
  std::vector<std::vector<K>> p1(m + 1), p2(m + 1);
  std::vector<K> one{FieldOps<K>::one()};
  p1[0] = one;
  p2[0] = one;
  std::vector<K> l1{mat.b, mat.a};  // coefficient i multiplies x^i
  std::vector<K> l2{mat.d, mat.c};
  for (int i = 1; i <= m; ++i) {
    p1[i] = poly_mul(p1[i - 1], l1);
    p2[i] = poly_mul(p2[i - 1], l2);
  }
  std::vector<K> acc(m + 1, FieldOps<K>::zero());
  for (int i = 0; i <= m; ++i) {
    if (FieldOps<K>::is_zero(f.c[i])) continue;
    std::vector<K> term = poly_mul(p1[i], p2[m - i]);
    for (size_t j = 0; j < term.size(); ++j) acc[j] += f.c[i] * term[j];
  }
  return BinaryForm<K>(m, std::move(acc));
}

template <class K>
BinaryForm<K> apply_mobius(const BinaryForm<K>& f, const Mobius<K>& mat) {
  return normalize(apply_mobius_raw(f, mat));
}

// ---- vanishing order --------------------------------------------------------

template <class K>
int ord_at(const BinaryForm<K>& f, const ProjPoint<K>& p) {
  if (f.is_zero()) throw Error(ErrorKind::DegenerateInput, "order of the zero form");
  if (p.infinite) return f.degree - f.x_deg();
  // Multiplicity of the root a in the dehomogenization, by repeated division.
  std::vector<K> u(f.c.begin(), f.c.begin() + f.x_deg() + 1);
  std::vector<K> lin{-p.a, FieldOps<K>::one()};
  int ord = 0;
  for (;;) {
    std::vector<K> rem;
    std::vector<K> q = poly_divmod(u, lin, rem);
    if (!rem.empty()) break;
    ++ord;
    u = std::move(q);
    if (u.empty()) break;  // u was exactly a power of the linear factor
  }
  return ord;
}

// ---- squarefree coprime basis -----------------------------------------------

template <class K>
struct CoprimeBasis {
  std::vector<BinaryForm<K>> basis;          // squarefree, pairwise coprime, normalized
  std::vector<std::vector<unsigned>> expo;   // expo[i][j]: multiplicity of basis j in form i
};

namespace detail {

/// Yun's algorithm on the dehomogenization, plus the y-power factor.
template <class K>
std::vector<std::pair<BinaryForm<K>, unsigned>> squarefree_parts(const BinaryForm<K>& f) {
  std::vector<std::pair<BinaryForm<K>, unsigned>> out;
  int ypow = f.degree - f.x_deg();
  if (ypow > 0) out.emplace_back(form_y_k<K>(), static_cast<unsigned>(ypow));
  std::vector<K> u(f.c.begin(), f.c.begin() + f.x_deg() + 1);
  if (u.size() <= 1) return out;
  std::vector<K> du = poly_derivative(u);
  std::vector<K> g = poly_gcd(u, du);
  std::vector<K> rem;
  std::vector<K> w = poly_divmod(u, g, rem);
  std::vector<K> z = poly_divmod(du, g, rem);
  unsigned mult = 1;
  while (w.size() > 1) {
    std::vector<K> dw = poly_derivative(w);
    std::vector<K> h = z;
    for (size_t i = 0; i < dw.size(); ++i) {
      if (i < h.size()) h[i] -= dw[i];
      else { h.resize(dw.size(), FieldOps<K>::zero()); h[i] -= dw[i]; }
    }
    poly_trim(h);
    std::vector<K> fac = poly_gcd(w, h);
    if (fac.size() > 1) {
      int d = static_cast<int>(fac.size()) - 1;
      std::vector<K> c(d + 1, FieldOps<K>::zero());
      for (size_t i = 0; i < fac.size(); ++i) c[i] = fac[i];
      out.emplace_back(normalize(BinaryForm<K>(d, std::move(c))), mult);
    }
    w = poly_divmod(w, fac, rem);
    z = poly_divmod(h, fac, rem);
    ++mult;
  }
  return out;
}

}  // namespace detail

/// Refines the inputs into a squarefree pairwise-coprime basis; every form
/// equals a unit times the product of basis elements to the listed powers.
template <class K>
CoprimeBasis<K> coprime_squarefree_basis(const std::vector<BinaryForm<K>>& forms) {
  for (const auto& f : forms)
    if (f.is_zero()) throw Error(ErrorKind::DegenerateInput, "zero form in basis input");

  std::vector<BinaryForm<K>> basis;
  auto insert = [&](BinaryForm<K> f) {
    std::vector<BinaryForm<K>> pending{std::move(f)};
    while (!pending.empty()) {
      BinaryForm<K> cur = std::move(pending.back());
      pending.pop_back();
      if (cur.degree == 0) continue;
      bool split = false;
      for (size_t j = 0; j < basis.size(); ++j) {
        BinaryForm<K> d = gcd_forms(cur, basis[j]);
        if (d.degree == 0) continue;
        if (d.degree < basis[j].degree) {
          BinaryForm<K> rest = normalize(form_div_exact(basis[j], d));
          basis[j] = d;
          basis.push_back(rest);
        }
        BinaryForm<K> leftover = normalize(form_div_exact(cur, d));
        if (leftover.degree > 0) pending.push_back(std::move(leftover));
        split = true;
        break;
      }
      if (!split) basis.push_back(normalize(cur));
    }
  };

  for (const auto& f : forms)
    for (auto& [part, mult] : detail::squarefree_parts(f)) insert(part);

  // Canonical order: by degree, then coefficientwise.
  std::sort(basis.begin(), basis.end(), [](const BinaryForm<K>& a, const BinaryForm<K>& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    for (int i = a.degree; i >= 0; --i)
      if (int c = FieldOps<K>::cmp(a.c[i], b.c[i]); c != 0) return c < 0;
    return false;
  });

  CoprimeBasis<K> out;
  out.basis = std::move(basis);
  out.expo.assign(forms.size(), std::vector<unsigned>(out.basis.size(), 0));
  for (size_t i = 0; i < forms.size(); ++i) {
    for (size_t j = 0; j < out.basis.size(); ++j) {
      BinaryForm<K> rest = forms[i];
      unsigned e = 0;
      while (rest.degree >= out.basis[j].degree && form_divides(out.basis[j], rest)) {
        rest = form_div_exact(rest, out.basis[j]);
        ++e;
      }
      out.expo[i][j] = e;
    }
  }
  return out;
}

// ---- l-th roots (over Q) ----------------------------------------------------

/// Form g with div(g) = div(f)/l, when the squarefree-basis exponent vector
/// of f is divisible by l; the scalar relating g^l to f is not constrained.
template <class K>
std::optional<BinaryForm<K>> divisor_root(const BinaryForm<K>& f, unsigned l) {
  if (f.is_zero()) throw Error(ErrorKind::DegenerateInput, "root of the zero form");
  if (l < 1 || f.degree % static_cast<int>(l) != 0)
    throw Error(ErrorKind::DegenerateInput, "root exponent does not divide the degree");
  CoprimeBasis<K> cb = coprime_squarefree_basis<K>({f});
  BinaryForm<K> g0(0, {FieldOps<K>::one()});
  for (size_t j = 0; j < cb.basis.size(); ++j) {
    unsigned e = cb.expo[0][j];
    if (e % l != 0) return std::nullopt;
    g0 = form_mul(g0, form_pow(cb.basis[j], e / l));
  }
  return normalize(g0);
}

/// Exact l-th root of a form when it exists over Q: g with g^l == f.
inline std::optional<BForm> lth_root(const BForm& f, unsigned l) {
  if (l < 2) throw Error(ErrorKind::DegenerateInput, "root exponent must be >= 2");
  std::optional<BForm> g0 = divisor_root(f, l);
  if (!g0) return std::nullopt;
  BForm gl = form_pow(*g0, l);
  // f and g0^l share a divisor, so they differ by a scalar.
  int i = f.x_ord();
  Rat lambda = f.c[i] / gl.c[i];
  std::optional<Rat> rho = rat_root(lambda, l);
  if (!rho) return std::nullopt;
  return form_scale(*g0, *rho);
}

// ---- display ----------------------------------------------------------------

template <class K>
std::string form_to_string(const BinaryForm<K>& f) {
  if (f.is_zero()) return "0 (deg " + std::to_string(f.degree) + ")";
  std::string out;
  for (int i = f.degree; i >= 0; --i) {
    if (FieldOps<K>::is_zero(f.c[i])) continue;
    if (!out.empty()) out += " + ";
    std::string coeff = FieldOps<K>::str(f.c[i]);
    std::string mono;
    if (i > 0) mono += i == 1 ? "x" : "x^" + std::to_string(i);
    int yp = f.degree - i;
    if (yp > 0) {
      if (!mono.empty()) mono += "*";
      mono += yp == 1 ? "y" : "y^" + std::to_string(yp);
    }
    if (mono.empty()) out += coeff;
    else if (coeff == "1") out += mono;
    else if (coeff == "-1") out += "-" + mono;
    else out += coeff + "*" + mono;
  }
  return out;
}

}  // namespace qmapk
