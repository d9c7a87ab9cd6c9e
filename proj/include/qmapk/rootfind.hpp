#pragma once

// Rational roots of binary forms over Q, via the rational root theorem.
// Divisor enumeration uses trial division plus Pollard rho, so anchor
// extraction stays exact for the coefficient sizes this library meets.

#include <map>
#include <set>
#include <vector>

#include "qmapk/binform.hpp"

namespace qmapk {
namespace detail {

inline void factor_into(Int n, std::map<Int, unsigned>& out);

inline Int pollard_rho(const Int& n) {
  // Brent variant with deterministic restarts; n is odd, composite, > 1.
  for (unsigned long c = 1;; ++c) {
    Int x(2), y(2), d(1);
    Int diff;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      diff = x - y;
      if (diff < 0) diff = -diff;
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

inline void factor_into(Int n, std::map<Int, unsigned>& out) {
  if (n < 0) n = -n;
  if (n <= 1) return;
  for (long p = 2; p < 100000 && Int(p) * p <= n; p == 2 ? p = 3 : p += 2) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[Int(p)];
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    ++out[n];
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

inline std::vector<Int> positive_divisors(const Int& n) {
  std::map<Int, unsigned> fac;
  factor_into(n, fac);
  std::vector<Int> divs{Int(1)};
  for (const auto& [p, e] : fac) {
    size_t old = divs.size();
    Int pe(1);
    for (unsigned k = 1; k <= e; ++k) {
      pe *= p;
      for (size_t i = 0; i < old; ++i) divs.push_back(divs[i] * pe);
    }
  }
  return divs;
}

}  // namespace detail

/// All rational points of P^1 where f vanishes, including [1:0].
inline std::vector<RationalPoint> rational_roots(const BForm& f) {
  if (f.is_zero()) throw Error(ErrorKind::DegenerateInput, "roots of the zero form");
  std::vector<RationalPoint> out;
  if (f.x_deg() < f.degree) out.push_back(RationalPoint::infinity());

  // Dehomogenize and clear denominators to a primitive integer polynomial.
  std::vector<Rat> u(f.c.begin(), f.c.begin() + f.x_deg() + 1);
  // strip the root at zero
  size_t lo = 0;
  while (lo < u.size() && u[lo] == 0) ++lo;
  if (lo > 0) {
    out.push_back(RationalPoint::affine(Rat(0)));
    u.erase(u.begin(), u.begin() + lo);
  }
  if (u.size() <= 1) return out;
  Int L(1);
  for (const auto& v : u) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), v.get_den().get_mpz_t());
  std::vector<Int> w;
  for (const auto& v : u) w.push_back(v.get_num() * (L / v.get_den()));

  std::vector<Int> ps = detail::positive_divisors(w.front());
  std::vector<Int> qs = detail::positive_divisors(w.back());
  std::set<Rat> candidates;
  for (const Int& p : ps)
    for (const Int& q : qs) {
      Rat cand(p, q);
      cand.canonicalize();
      candidates.insert(cand);
      candidates.insert(-cand);
    }
  for (const Rat& r : candidates) {
    Rat acc(0);
    for (size_t i = w.size(); i-- > 0;) acc = acc * r + Rat(w[i]);
    if (acc == 0) out.push_back(RationalPoint::affine(r));
  }
  return out;
}

}  // namespace qmapk
