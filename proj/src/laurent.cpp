#include "hptoda/laurent.hpp"

#include <limits>
#include <sstream>

namespace hptoda {

namespace {

std::complex<double> ipow(std::complex<double> z, int k) {
  if (k < 0) return 1.0 / ipow(z, -k);
  std::complex<double> r = 1.0;
  std::complex<double> b = z;
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

void append_monomial(std::ostringstream& os, bool first, const Rat& c, const std::string& var_part) {
  Rat mag = c.abs();
  if (first) {
    if (c.sign() < 0) os << "-";
  } else {
    os << (c.sign() < 0 ? " - " : " + ");
  }
  if (var_part.empty()) {
    os << mag.str();
  } else {
    if (mag != Rat(1)) os << mag.str() << "*";
    os << var_part;
  }
}

std::string power(const char* var, int k) {
  if (k == 0) return {};
  if (k == 1) return var;
  return std::string(var) + "^" + std::to_string(k);
}

}  // namespace

LaurentPoly::LaurentPoly(const Rat& c) {
  if (!c.is_zero()) terms_.emplace(0, c);
}

LaurentPoly LaurentPoly::monomial(const Rat& coeff, int degree) {
  LaurentPoly p;
  if (!coeff.is_zero()) p.terms_.emplace(degree, coeff);
  return p;
}

Rat LaurentPoly::coeff(int degree) const {
  auto it = terms_.find(degree);
  return it == terms_.end() ? Rat(0) : it->second;
}

void LaurentPoly::add_term(int degree, const Rat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(degree, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::complex<double> LaurentPoly::eval(std::complex<double> y) const {
  std::complex<double> acc = 0.0;
  for (const auto& [d, c] : terms_) acc += c.to_double() * ipow(y, d);
  return acc;
}

Rat LaurentPoly::eval(const Rat& y) const {
  Rat acc;
  for (const auto& [d, c] : terms_) {
    Rat p = y.pow(static_cast<unsigned>(d < 0 ? -d : d));
    acc += d < 0 ? c / p : c * p;
  }
  return acc;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [d, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [d, c] : o.terms_) add_term(d, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [d, c] : o.terms_) add_term(d, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [da, ca] : a.terms_)
    for (const auto& [db, cb] : b.terms_) r.add_term(da + db, ca * cb);
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r;
  for (const auto& [d, c] : terms_) r.terms_.emplace(d + k, c);
  return r;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    append_monomial(os, first, it->second, power("y", it->first));
    first = false;
  }
  return os.str();
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return LaurentPoly();
  // Units of the Laurent ring are monomials, so strip the lowest powers and
  // divide as ordinary polynomials whose divisor has a nonzero constant term.
  const int shift = a.min_degree() - b.min_degree();
  LaurentPoly rem = a.shifted(-a.min_degree());
  const LaurentPoly div = b.shifted(-b.min_degree());
  const int div_deg = div.max_degree();
  const Rat& div_lead = div.terms().rbegin()->second;
  LaurentPoly quot;
  while (!rem.is_zero() && rem.max_degree() >= div_deg) {
    const int d = rem.max_degree() - div_deg;
    LaurentPoly q = LaurentPoly::monomial(rem.terms().rbegin()->second / div_lead, d);
    rem -= q * div;
    quot += q;
  }
  if (!rem.is_zero()) return std::nullopt;
  return quot.shifted(shift);
}

// ---------------------------------------------------------------------------

BivarLaurent::BivarLaurent(const LaurentPoly& p) {
  for (const auto& [d, c] : p.terms()) terms_.emplace(Key{0, d}, c);
}

BivarLaurent BivarLaurent::monomial(const Rat& coeff, int x_degree, int y_degree) {
  BivarLaurent p;
  if (!coeff.is_zero()) p.terms_.emplace(Key{x_degree, y_degree}, coeff);
  return p;
}

Rat BivarLaurent::coeff(int x_degree, int y_degree) const {
  auto it = terms_.find(Key{x_degree, y_degree});
  return it == terms_.end() ? Rat(0) : it->second;
}

int BivarLaurent::x_degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.first;
}

LaurentPoly BivarLaurent::x_coefficient(int k) const {
  LaurentPoly r;
  for (auto it = terms_.lower_bound(Key{k, std::numeric_limits<int>::min()});
       it != terms_.end() && it->first.first == k; ++it)
    r += LaurentPoly::monomial(it->second, it->first.second);
  return r;
}

std::complex<double> BivarLaurent::eval(std::complex<double> x, std::complex<double> y) const {
  std::complex<double> acc = 0.0;
  for (const auto& [k, c] : terms_) acc += c.to_double() * ipow(x, k.first) * ipow(y, k.second);
  return acc;
}

void BivarLaurent::add_term(Key k, const Rat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

BivarLaurent BivarLaurent::operator-() const {
  BivarLaurent r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

BivarLaurent& BivarLaurent::operator+=(const BivarLaurent& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

BivarLaurent& BivarLaurent::operator-=(const BivarLaurent& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

BivarLaurent operator*(const BivarLaurent& a, const BivarLaurent& b) {
  BivarLaurent r;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
  return r;
}

BivarLaurent& BivarLaurent::operator*=(const BivarLaurent& o) { return *this = *this * o; }

std::string BivarLaurent::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    std::string var = power("x", it->first.first);
    std::string ypart = power("y", it->first.second);
    if (!var.empty() && !ypart.empty()) var += "*";
    append_monomial(os, first, it->second, var + ypart);
    first = false;
  }
  return os.str();
}

}  // namespace hptoda
