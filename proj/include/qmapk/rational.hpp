#pragma once

// Exact rational arithmetic. Rat is GMP's canonical mpq: always in lowest
// terms with positive denominator, which is exactly the representation the
// rest of the library assumes. No floating point enters the core anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace qmapk {

using Rat = mpq_class;
using Int = mpz_class;

enum class ErrorKind {
  DegenerateInput,
  TargetViolation,
  NotFano,
  PreconditionViolated,
  NonTermination,
  Unsupported,
  DegenerateModel,
  ParseError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::TargetViolation: return "TargetViolation";
    case ErrorKind::NotFano: return "NotFanoError";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NonTermination: return "NonTermination";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::DegenerateModel: return "DegenerateModel";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Renders "num/den", or just "num" when the denominator is 1.
inline std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw Error(ErrorKind::ParseError, "not a rational: '" + s + "'");
  r.canonicalize();
  if (r.get_den() == 0)
    throw Error(ErrorKind::ParseError, "zero denominator: '" + s + "'");
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

/// Exact l-th root of a rational, when one exists. For even l the input
/// must be nonnegative and the nonnegative root is returned.
inline std::optional<Rat> rat_root(const Rat& r, unsigned l) {
  if (l == 0) return std::nullopt;
  if (l == 1) return r;
  if (r == 0) return Rat(0);
  bool neg = r < 0;
  if (neg && l % 2 == 0) return std::nullopt;
  Int num = abs(r.get_num());
  Int den = r.get_den();
  Int rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), l)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), l)) return std::nullopt;
  Rat out(neg ? Int(-rn) : rn, rd);
  out.canonicalize();
  return out;
}

/// Total order usable for canonical sorting.
inline int rat_cmp(const Rat& a, const Rat& b) { return cmp(a, b); }

}  // namespace qmapk
