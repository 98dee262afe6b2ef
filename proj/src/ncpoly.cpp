#include "cgkit/ncpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace cgkit {

int Alphabet::t_code(int i, int k) const {
  if (kind != Kind::T) throw std::logic_error("t_code on an x-alphabet");
  if (i < 1 || i > n || k < 1 || k > n) throw std::out_of_range("T generator index");
  return (i - 1) * n + (k - 1);
}

std::pair<int, int> Alphabet::t_indices(int code) const {
  if (kind != Kind::T) throw std::logic_error("t_indices on an x-alphabet");
  if (code < 0 || code >= size()) throw std::out_of_range("letter code");
  return {code / n + 1, code % n + 1};
}

int Alphabet::x_code(int i) const {
  if (kind != Kind::X) throw std::logic_error("x_code on a T-alphabet");
  if (i < 1 || i > n) throw std::out_of_range("x generator index");
  return i - 1;
}

int Alphabet::x_index(int code) const {
  if (kind != Kind::X) throw std::logic_error("x_index on a T-alphabet");
  if (code < 0 || code >= size()) throw std::out_of_range("letter code");
  return code + 1;
}

std::pair<int, int> Alphabet::letter_grade(int code) const {
  if (kind == Kind::T) {
    auto [i, k] = t_indices(code);
    return {i, k};
  }
  return {x_index(code), 0};
}

std::string Alphabet::letter_name(int code) const {
  if (kind == Kind::T) {
    auto [i, k] = t_indices(code);
    return "T_" + std::to_string(i) + "^" + std::to_string(k);
  }
  return "x_" + std::to_string(x_index(code));
}

int Alphabet::letter_from_name(const std::string& name) const {
  for (int c = 0; c < size(); ++c)
    if (letter_name(c) == name) return c;
  throw std::invalid_argument("unknown generator name: " + name);
}

NCPolynomial NCPolynomial::monomial(Alphabet alphabet, Word w, LaurentPoly coeff) {
  NCPolynomial out(alphabet);
  out.add_term(w, coeff);
  return out;
}

void NCPolynomial::add_term(const Word& w, const LaurentPoly& coeff) {
  for (auto letter : w)
    if (letter >= static_cast<std::uint16_t>(alphabet_.size()))
      throw std::out_of_range("word letter outside alphabet");
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void NCPolynomial::require_same_alphabet(const NCPolynomial& o) const {
  if (alphabet_ != o.alphabet_)
    throw std::invalid_argument("mixed alphabets in noncommutative arithmetic");
}

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& o) {
  require_same_alphabet(o);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPolynomial& NCPolynomial::operator-=(const NCPolynomial& o) {
  require_same_alphabet(o);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPolynomial& NCPolynomial::operator*=(const NCPolynomial& o) {
  require_same_alphabet(o);
  TermMap product;
  for (const auto& [wa, ca] : terms_) {
    for (const auto& [wb, cb] : o.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      auto [it, inserted] = product.emplace(std::move(w), ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  terms_.clear();
  for (auto& [w, c] : product)
    if (!c.is_zero()) terms_.emplace(w, std::move(c));
  return *this;
}

NCPolynomial& NCPolynomial::operator*=(const LaurentPoly& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

int NCPolynomial::homogeneous_degree() const {
  if (terms_.empty()) return -1;
  std::size_t d = terms_.begin()->first.size();
  for (const auto& [w, c] : terms_)
    if (w.size() != d) throw std::domain_error("inhomogeneous noncommutative polynomial");
  return static_cast<int>(d);
}

std::string NCPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (auto letter : w) os << "*" << alphabet_.letter_name(letter);
    if (w.empty()) os << "*1";
  }
  return os.str();
}

}  // namespace cgkit
