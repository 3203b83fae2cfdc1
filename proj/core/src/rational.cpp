#include "ellconn/rational.hpp"

#include <cctype>
#include <ostream>

#include "ellconn/errors.hpp"

namespace ellconn {

Rational::Rational(long n, long d) {
  if (d == 0) throw DomainError("rational: zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  auto bad = [&] { return DomainError("rational: cannot parse \"" + std::string(text) + "\""); };
  size_t begin = 0, end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (begin == end) throw bad();
  std::string body(text.substr(begin, end - begin));
  size_t digits = 0;
  size_t slashes = 0;
  for (size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ++digits;
    } else if (c == '/') {
      ++slashes;
      if (slashes > 1 || i == 0 || i + 1 == body.size()) throw bad();
    } else if (c == '-' || c == '+') {
      if (i != 0 && body[i - 1] != '/') throw bad();
    } else {
      throw bad();
    }
  }
  if (digits == 0) throw bad();
  mpq_class v;
  if (v.set_str(body, 10) != 0) throw bad();
  if (v.get_den() == 0) throw DomainError("rational: zero denominator");
  v.canonicalize();
  return Rational(std::move(v));
}

std::string Rational::str() const { return v_.get_str(); }

std::optional<Rational> Rational::sqrt() const {
  if (sign() < 0) return std::nullopt;
  mpz_class num = v_.get_num(), den = v_.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(mpq_class(rn, rd));
}

bool Rational::is_odd_integer() const {
  if (!is_integer()) return false;
  return mpz_odd_p(v_.get_num().get_mpz_t()) != 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace ellconn
