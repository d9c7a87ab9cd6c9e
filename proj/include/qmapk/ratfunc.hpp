#pragma once

// The field Q(t) of rational functions in one parameter, used to compute
// with generic fibers of one-parameter families. Stored reduced, with a
// monic denominator, so equality is coefficient-wise.

#include <algorithm>
#include <string>
#include <vector>

#include "qmapk/rational.hpp"

namespace qmapk {

/// Dense polynomial in t over Q, coefficient i = coefficient of t^i.
/// The zero polynomial is the empty vector.
using TPoly = std::vector<Rat>;

inline void tpoly_trim(TPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline bool tpoly_is_zero(const TPoly& p) { return p.empty(); }
inline int tpoly_deg(const TPoly& p) { return static_cast<int>(p.size()) - 1; }

inline TPoly tpoly_const(const Rat& c) {
  if (c == 0) return {};
  return {c};
}

inline TPoly tpoly_add(const TPoly& a, const TPoly& b) {
  TPoly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  tpoly_trim(r);
  return r;
}

inline TPoly tpoly_neg(TPoly a) {
  for (auto& c : a) c = -c;
  return a;
}

inline TPoly tpoly_sub(const TPoly& a, const TPoly& b) {
  return tpoly_add(a, tpoly_neg(b));
}

inline TPoly tpoly_mul(const TPoly& a, const TPoly& b) {
  if (a.empty() || b.empty()) return {};
  TPoly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  tpoly_trim(r);
  return r;
}

inline TPoly tpoly_scale(TPoly a, const Rat& c) {
  if (c == 0) return {};
  for (auto& x : a) x *= c;
  return a;
}

/// Euclidean division; returns quotient, stores remainder in rem.
inline TPoly tpoly_divmod(const TPoly& a, const TPoly& b, TPoly& rem) {
  if (tpoly_is_zero(b)) throw Error(ErrorKind::DegenerateInput, "division by zero polynomial");
  rem = a;
  tpoly_trim(rem);
  if (rem.size() < b.size()) return {};
  TPoly q(rem.size() - b.size() + 1, Rat(0));
  const Rat lead = b.back();
  while (rem.size() >= b.size() && !rem.empty()) {
    Rat c = rem.back() / lead;
    size_t shift = rem.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) rem[shift + i] -= c * b[i];
    tpoly_trim(rem);
    if (rem.empty()) break;
  }
  tpoly_trim(q);
  return q;
}

/// Monic gcd via the Euclidean algorithm.
inline TPoly tpoly_gcd(TPoly a, TPoly b) {
  tpoly_trim(a);
  tpoly_trim(b);
  while (!b.empty()) {
    TPoly r;
    tpoly_divmod(a, b, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    Rat inv = 1 / a.back();
    for (auto& c : a) c *= inv;
  }
  return a;
}

inline Rat tpoly_eval(const TPoly& p, const Rat& t0) {
  Rat v(0);
  for (size_t i = p.size(); i-- > 0;) v = v * t0 + p[i];
  return v;
}

/// t-adic valuation: index of the lowest nonzero coefficient (-1 for zero).
inline int tpoly_ord(const TPoly& p) {
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) return static_cast<int>(i);
  return -1;
}

inline std::string tpoly_to_string(const TPoly& p, const std::string& var = "t") {
  if (p.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += rat_to_string(p[i]);
    if (i >= 1) out += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return out;
}

/// Element of Q(t): num/den with den monic and gcd(num,den)=1.
class RatFunc {
 public:
  RatFunc() : num_(), den_{Rat(1)} {}
  RatFunc(const Rat& c) : num_(tpoly_const(c)), den_{Rat(1)} {}
  RatFunc(long c) : RatFunc(Rat(c)) {}
  RatFunc(TPoly num, TPoly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }
  static RatFunc poly(TPoly p) { return RatFunc(std::move(p), {Rat(1)}); }
  static RatFunc t() { return poly({Rat(0), Rat(1)}); }

  const TPoly& num() const { return num_; }
  const TPoly& den() const { return den_; }
  bool is_zero() const { return num_.empty(); }

  /// Constant rational functions convert back to Rat.
  bool is_constant() const { return tpoly_deg(num_) <= 0 && tpoly_deg(den_) == 0; }
  Rat constant_value() const {
    if (!is_constant()) throw Error(ErrorKind::PreconditionViolated, "not a constant in Q(t)");
    return num_.empty() ? Rat(0) : num_[0] / den_[0];
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(tpoly_add(tpoly_mul(a.num_, b.den_), tpoly_mul(b.num_, a.den_)),
                   tpoly_mul(a.den_, b.den_));
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(tpoly_sub(tpoly_mul(a.num_, b.den_), tpoly_mul(b.num_, a.den_)),
                   tpoly_mul(a.den_, b.den_));
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(tpoly_mul(a.num_, b.num_), tpoly_mul(a.den_, b.den_));
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw Error(ErrorKind::DegenerateInput, "division by zero in Q(t)");
    return RatFunc(tpoly_mul(a.num_, b.den_), tpoly_mul(a.den_, b.num_));
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = tpoly_neg(r.num_);
    return r;
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  std::string str() const {
    if (tpoly_deg(den_) == 0 && den_[0] == 1) return tpoly_to_string(num_);
    return "(" + tpoly_to_string(num_) + ")/(" + tpoly_to_string(den_) + ")";
  }

 private:
  void reduce() {
    tpoly_trim(num_);
    tpoly_trim(den_);
    if (den_.empty()) throw Error(ErrorKind::DegenerateInput, "zero denominator in Q(t)");
    if (num_.empty()) {
      den_ = {Rat(1)};
      return;
    }
    TPoly g = tpoly_gcd(num_, den_);
    if (tpoly_deg(g) > 0) {
      TPoly r;
      num_ = tpoly_divmod(num_, g, r);
      den_ = tpoly_divmod(den_, g, r);
    }
    Rat lead = den_.back();
    if (lead != 1) {
      Rat inv = 1 / lead;
      for (auto& c : num_) c *= inv;
      for (auto& c : den_) c *= inv;
    }
  }

  TPoly num_;
  TPoly den_;
};

// ---- field traits, shared by Rat and RatFunc ------------------------------

template <class K>
struct FieldOps;

template <>
struct FieldOps<Rat> {
  static bool is_zero(const Rat& x) { return x == 0; }
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static int cmp(const Rat& a, const Rat& b) { return rat_cmp(a, b); }
  static std::string str(const Rat& x) { return rat_to_string(x); }
};

template <>
struct FieldOps<RatFunc> {
  static bool is_zero(const RatFunc& x) { return x.is_zero(); }
  static RatFunc zero() { return RatFunc(Rat(0)); }
  static RatFunc one() { return RatFunc(Rat(1)); }
  static int cmp(const RatFunc& a, const RatFunc& b) {
    auto lex = [](const TPoly& p, const TPoly& q) {
      if (p.size() != q.size()) return p.size() < q.size() ? -1 : 1;
      for (size_t i = 0; i < p.size(); ++i)
        if (int c = rat_cmp(p[i], q[i]); c != 0) return c;
      return 0;
    };
    if (int c = lex(a.num(), b.num()); c != 0) return c;
    return lex(a.den(), b.den());
  }
  static std::string str(const RatFunc& x) { return x.str(); }
};

}  // namespace qmapk
