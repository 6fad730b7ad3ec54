#include "curvelab/rational.hpp"

#include <cctype>

namespace curvelab {

Rational Rational::from_string(std::string_view s) {
  auto parse_int = [](std::string_view t, mpz_t out) {
    std::string buf(t);
    if (buf.empty() || mpz_set_str(out, buf.c_str(), 10) != 0)
      throw std::invalid_argument("Rational: bad integer '" + buf + "'");
  };
  // trim whitespace
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("Rational: empty string");

  Rational r;
  auto slash = s.find('/');
  mpz_t num, den;
  mpz_init(num);
  mpz_init(den);
  try {
    if (slash == std::string_view::npos) {
      parse_int(s, num);
      mpz_set_ui(den, 1);
    } else {
      parse_int(s.substr(0, slash), num);
      parse_int(s.substr(slash + 1), den);
      if (mpz_sgn(den) == 0) throw std::invalid_argument("Rational: zero denominator");
    }
    mpq_set_num(r.q_, num);
    mpq_set_den(r.q_, den);
    mpq_canonicalize(r.q_);
  } catch (...) {
    mpz_clear(num);
    mpz_clear(den);
    throw;
  }
  mpz_clear(num);
  mpz_clear(den);
  return r;
}

Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  const Rational base = e < 0 ? reciprocal() : *this;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1ul
                          : static_cast<unsigned long>(e);
  Rational r;
  mpz_pow_ui(mpq_numref(r.q_), mpq_numref(base.q_), n);
  mpz_pow_ui(mpq_denref(r.q_), mpq_denref(base.q_), n);
  // canonical since base is canonical and gcd is preserved under powers
  return r;
}

long Rational::valuation(unsigned long p) const {
  if (is_zero()) throw std::domain_error("Rational: valuation of zero");
  if (p < 2) throw std::invalid_argument("Rational: valuation base must be >= 2");
  mpz_t tmp, pz;
  mpz_init(tmp);
  mpz_init_set_ui(pz, p);
  long vn = static_cast<long>(mpz_remove(tmp, mpq_numref(q_), pz));
  long vd = static_cast<long>(mpz_remove(tmp, mpq_denref(q_), pz));
  mpz_clear(tmp);
  mpz_clear(pz);
  return vn - vd;
}

std::string Rational::to_string() const {
  char* cstr = mpq_get_str(nullptr, 10, q_);
  std::string s(cstr);
  void (*freefunc)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(cstr, s.size() + 1);
  return s;
}

Rational int_pow(long base, unsigned long e) {
  Rational b(base);
  return b.pow(static_cast<long>(e));
}

Rational prime_power(unsigned long p, long e) {
  return Rational(static_cast<long>(p)).pow(e);
}

}  // namespace curvelab
