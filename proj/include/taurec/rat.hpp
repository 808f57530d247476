#ifndef TAUREC_RAT_HPP
#define TAUREC_RAT_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace taurec {

// Arbitrary-precision rational, canonical form maintained by GMP.
using Rat = mpq_class;

class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

inline Error descriptor_mismatch(const std::string& msg) {
  return Error("descriptor-mismatch", msg);
}
inline Error division_by_zero(const std::string& msg) {
  return Error("division-by-zero", msg);
}
inline Error truncation_error(const std::string& msg) {
  return Error("insufficient-truncation", msg);
}
inline Error capability_error(const std::string& msg) {
  return Error("capability", msg);
}

inline Rat rat_of(long n, long d = 1) {
  if (d == 0) throw division_by_zero("rational with zero denominator");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

// Parses "p", "-p/q" style exact rationals. Floating point forms are rejected.
inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw Error("parse", "empty rational literal");
  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos)
    throw Error("parse", "floating point literal rejected, use p/q: " + s);
  Rat r;
  if (r.set_str(s, 10) != 0) throw Error("parse", "bad rational literal: " + s);
  r.canonicalize();
  if (r.get_den() == 0) throw division_by_zero("rational literal " + s);
  return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline bool rat_is_zero(const Rat& r) { return sgn(r) == 0; }

// Exact square root over Q, when one exists.
inline std::optional<Rat> rat_sqrt(const Rat& r) {
  if (sgn(r) < 0) return std::nullopt;
  if (sgn(r) == 0) return Rat(0);
  mpz_class n = r.get_num(), d = r.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rat out(rn, rd);
  out.canonicalize();
  return out;
}

}  // namespace taurec

#endif
