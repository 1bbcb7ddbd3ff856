#include "hptoda/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

#include "hptoda/error.hpp"

namespace hptoda {

Rat::Rat(long num, long den) {
  if (den == 0) throw std::domain_error("Rat: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  v_ /= o.v_;
  return *this;
}

Rat Rat::pow(unsigned e) const {
  mpq_class r(1);
  for (unsigned i = 0; i < e; ++i) r *= v_;
  return Rat(r);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void parse_fail(std::string_view text, std::size_t pos, const char* why) {
  throw Error(ErrorKind::ParseError, "rational \"" + std::string(text) + "\" at offset " +
                                         std::to_string(pos) + ": " + why);
}

}  // namespace

Rat Rat::parse(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  std::size_t offset = 0;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
    offset = 1;
  }
  if (s.empty()) parse_fail(text, offset, "missing digits");

  mpq_class value;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    auto mant = s.substr(0, e);
    auto expo = s.substr(e + 1);
    if (!all_digits(mant)) parse_fail(text, offset, "mantissa must be digits");
    if (!all_digits(expo)) parse_fail(text, offset + e + 1, "exponent must be non-negative digits");
    if (expo.size() > 6) parse_fail(text, offset + e + 1, "exponent too large");
    mpz_class m(std::string(mant), 10);
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, std::stoul(std::string(expo)));
    value = mpq_class(m * p);
  } else if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto n = s.substr(0, slash);
    auto d = s.substr(slash + 1);
    if (!all_digits(n)) parse_fail(text, offset, "numerator must be digits");
    if (!all_digits(d)) parse_fail(text, offset + slash + 1, "denominator must be digits");
    mpz_class den(std::string(d), 10);
    if (den == 0) parse_fail(text, offset + slash + 1, "zero denominator");
    value = mpq_class(mpz_class(std::string(n), 10), den);
  } else {
    if (!all_digits(s)) parse_fail(text, offset, "expected digits");
    value = mpq_class(mpz_class(std::string(s), 10));
  }
  if (negative) value = -value;
  return Rat(std::move(value));
}

std::string Rat::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace hptoda
