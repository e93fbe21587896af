#include "pclab/arith/rat.hpp"

#include <cctype>

#include "pclab/error.hpp"

namespace pclab {

Rat::Rat(const Int& n, const Int& d) {
  if (d == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

namespace {

bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  std::string digits(s.substr(i));
  out = Int(digits, 10);
  if (s[0] == '-') out = -out;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rat Rat::parse(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  Int n, d = 1;
  if (slash == std::string_view::npos) {
    if (!parse_int(s, n))
      throw Error(ErrorKind::InvalidArgument, "malformed rational '" + std::string(text) + "'");
  } else {
    std::string_view ds = trim(s.substr(slash + 1));
    if (!parse_int(trim(s.substr(0, slash)), n) || !parse_int(ds, d) || ds[0] == '-' ||
        ds[0] == '+')
      throw Error(ErrorKind::InvalidArgument, "malformed rational '" + std::string(text) + "'");
    if (d == 0)
      throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
  }
  return Rat(n, d);
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rat Rat::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return Rat(den(), num());
}

Rat Rat::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Int n, d;
  mpz_pow_ui(n.get_mpz_t(), num_ref().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), den_ref().get_mpz_t(), static_cast<unsigned long>(e));
  return Rat(n, d);
}

Int Rat::floor() const {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), num_ref().get_mpz_t(), den_ref().get_mpz_t());
  return r;
}

Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace pclab
