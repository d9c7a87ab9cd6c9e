#pragma once

// Formal Q-divisors on P^1 over a squarefree coprime cluster basis. Every
// geometric root of a cluster carries the same multiplicity in the divisor,
// so multiplicity queries are exact without factoring into irreducibles.
// The point at infinity is the cluster y.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmapk/binform.hpp"

namespace qmapk {

template <class K>
struct ClusterTerm {
  BinaryForm<K> form;  // squarefree, normalized
  K coeff;
};

template <class K>
class QDiv {
 public:
  QDiv() = default;

  static QDiv zero() { return QDiv(); }

  /// Sum of c_i * div(f_i), re-based on a common coprime squarefree basis.
  static QDiv from_pairs(const std::vector<std::pair<BinaryForm<K>, K>>& pairs) {
    std::vector<BinaryForm<K>> forms;
    forms.reserve(pairs.size());
    for (const auto& [f, c] : pairs) {
      if (f.is_zero()) throw Error(ErrorKind::DegenerateInput, "divisor of the zero form");
      forms.push_back(f);
    }
    CoprimeBasis<K> cb = coprime_squarefree_basis(forms);
    QDiv out;
    for (size_t j = 0; j < cb.basis.size(); ++j) {
      K c = FieldOps<K>::zero();
      for (size_t i = 0; i < pairs.size(); ++i)
        c += pairs[i].second * K(static_cast<long>(cb.expo[i][j]));
      if (!FieldOps<K>::is_zero(c)) out.terms_.push_back({cb.basis[j], c});
    }
    return out;
  }

  const std::vector<ClusterTerm<K>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  K degree() const {
    K d = FieldOps<K>::zero();
    for (const auto& t : terms_) d += t.coeff * K(static_cast<long>(t.form.degree));
    return d;
  }

  bool is_effective() const {
    for (const auto& t : terms_)
      if (FieldOps<K>::cmp(t.coeff, FieldOps<K>::zero()) < 0) return false;
    return true;
  }

  K multiplicity_at(const ProjPoint<K>& p) const {
    K m = FieldOps<K>::zero();
    for (const auto& t : terms_)
      m += t.coeff * K(static_cast<long>(ord_at(t.form, p)));
    return m;
  }

  /// Maximum multiplicity over geometric points, with the witness cluster.
  /// Points outside the support contribute 0, so the result is never negative.
  std::pair<K, std::optional<BinaryForm<K>>> max_multiplicity() const {
    K best = FieldOps<K>::zero();
    std::optional<BinaryForm<K>> witness;
    for (const auto& t : terms_) {
      if (FieldOps<K>::cmp(t.coeff, best) > 0) {
        best = t.coeff;
        witness = t.form;
      }
    }
    return {best, witness};
  }

  /// All clusters attaining a given multiplicity.
  std::vector<BinaryForm<K>> clusters_with_coeff(const K& c) const {
    std::vector<BinaryForm<K>> out;
    for (const auto& t : terms_)
      if (t.coeff == c) out.push_back(t.form);
    return out;
  }

  friend QDiv combine(const QDiv& a, const QDiv& b, const K& s, const K& t) {
    std::vector<std::pair<BinaryForm<K>, K>> pairs;
    for (const auto& term : a.terms_) pairs.emplace_back(term.form, s * term.coeff);
    for (const auto& term : b.terms_) pairs.emplace_back(term.form, t * term.coeff);
    return from_pairs(pairs);
  }

  friend QDiv apply_mobius(const QDiv& d, const Mobius<K>& mat) {
    std::vector<std::pair<BinaryForm<K>, K>> pairs;
    for (const auto& term : d.terms_)
      pairs.emplace_back(apply_mobius(term.form, mat), term.coeff);
    return from_pairs(pairs);
  }

  friend bool operator==(const QDiv& a, const QDiv& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].form != b.terms_[i].form || a.terms_[i].coeff != b.terms_[i].coeff)
        return false;
    return true;
  }
  friend bool operator!=(const QDiv& a, const QDiv& b) { return !(a == b); }

 private:
  std::vector<ClusterTerm<K>> terms_;  // canonical order from the basis routine
};

using QDivisor = QDiv<Rat>;

template <class K>
std::string divisor_to_string(const QDiv<K>& d) {
  if (d.is_zero()) return "0";
  std::string out;
  for (const auto& t : d.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + form_to_string(t.form) + " : " + FieldOps<K>::str(t.coeff) + ")";
  }
  return out;
}

/// div(f) with integer multiplicities, as a Q-divisor.
template <class K>
QDiv<K> divisor_of(const BinaryForm<K>& f) {
  return QDiv<K>::from_pairs({{f, FieldOps<K>::one()}});
}

}  // namespace qmapk
