#include "cgkit/laurent.hpp"

#include "cgkit/modular.hpp"

#include <sstream>
#include <stdexcept>

namespace cgkit {

VarListPtr LaurentPoly::default_vars() {
  static const VarListPtr vars = std::make_shared<const VarList>(VarList{"q", "p"});
  return vars;
}

VarListPtr LaurentPoly::make_vars(std::vector<std::string> names) {
  if (names.empty()) throw std::invalid_argument("variable list must be nonempty");
  return std::make_shared<const VarList>(std::move(names));
}

LaurentPoly LaurentPoly::zero(VarListPtr vars) { return LaurentPoly(std::move(vars)); }

LaurentPoly LaurentPoly::constant(const Rat& c, VarListPtr vars) {
  LaurentPoly out(std::move(vars));
  if (!cgkit::is_zero(c)) out.terms_[Exponents(out.vars().size(), 0)] = c;
  return out;
}

LaurentPoly LaurentPoly::monomial(const Rat& coeff, Exponents exps, VarListPtr vars) {
  LaurentPoly out(std::move(vars));
  if (exps.size() != out.vars().size())
    throw std::invalid_argument("exponent vector length does not match variable list");
  if (!cgkit::is_zero(coeff)) out.terms_[std::move(exps)] = coeff;
  return out;
}

LaurentPoly LaurentPoly::variable(std::string_view name, int power, VarListPtr vars) {
  LaurentPoly out(std::move(vars));
  const VarList& vl = out.vars();
  for (std::size_t i = 0; i < vl.size(); ++i) {
    if (vl[i] == name) {
      Exponents e(vl.size(), 0);
      e[i] = power;
      out.terms_[std::move(e)] = Rat(1);
      return out;
    }
  }
  throw std::invalid_argument("unknown variable: " + std::string(name));
}

LaurentPoly LaurentPoly::q(int power) { return variable("q", power); }
LaurentPoly LaurentPoly::p(int power) { return variable("p", power); }

bool LaurentPoly::is_one() const {
  if (terms_.size() != 1) return false;
  const auto& [e, c] = *terms_.begin();
  for (int x : e)
    if (x != 0) return false;
  return c == 1;
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  for (int x : terms_.begin()->first)
    if (x != 0) return false;
  return true;
}

Rat LaurentPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

void LaurentPoly::require_same_ring(const LaurentPoly& o) const {
  if (vars_ == o.vars_) return;
  if (*vars_ != *o.vars_)
    throw std::invalid_argument("mixed variable lists in polynomial arithmetic");
}

void LaurentPoly::trim() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (cgkit::is_zero(it->second))
      it = terms_.erase(it);
    else
      ++it;
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  require_same_ring(o);
  for (const auto& [e, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (cgkit::is_zero(it->second)) terms_.erase(it);
    }
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  require_same_ring(o);
  for (const auto& [e, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(e, -c);
    if (!inserted) {
      it->second -= c;
      if (cgkit::is_zero(it->second)) terms_.erase(it);
    }
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  require_same_ring(o);
  TermMap product;
  const std::size_t width = vars_->size();
  Exponents e(width, 0);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < width; ++i) e[i] = ea[i] + eb[i];
      auto [it, inserted] = product.emplace(e, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  terms_ = std::move(product);
  trim();
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rat& c) {
  if (cgkit::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out(vars_);
  for (const auto& [e, c] : terms_) out.terms_[e] = -c;
  return out;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  if (vars_ != o.vars_ && *vars_ != *o.vars_) return false;
  return terms_ == o.terms_;
}

LaurentPoly LaurentPoly::pow(int e) const {
  if (e == 0) return constant(Rat(1), vars_);
  if (e < 0) return monomial_inverse().pow(-e);
  LaurentPoly acc = constant(Rat(1), vars_);
  LaurentPoly base = *this;
  int k = e;
  while (k > 0) {
    if (k & 1) acc *= base;
    if (k >>= 1) base *= base;
  }
  return acc;
}

LaurentPoly LaurentPoly::monomial_inverse() const {
  if (terms_.size() != 1)
    throw std::domain_error("only nonzero monomials are invertible");
  const auto& [e, c] = *terms_.begin();
  Exponents inv(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) inv[i] = -e[i];
  return monomial(Rat(1) / c, std::move(inv), vars_);
}

LaurentPoly LaurentPoly::substitute_inverse() const {
  LaurentPoly out(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents flipped(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) flipped[i] = -e[i];
    out.terms_[std::move(flipped)] = c;
  }
  return out;
}

LaurentPoly LaurentPoly::substitute_var(std::string_view name,
                                        const LaurentPoly& value) const {
  const VarList& vl = *vars_;
  std::size_t idx = vl.size();
  for (std::size_t i = 0; i < vl.size(); ++i)
    if (vl[i] == name) {
      idx = i;
      break;
    }
  if (idx == vl.size())
    throw std::invalid_argument("unknown variable: " + std::string(name));
  value.require_same_ring(*this);

  LaurentPoly out(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents base = e;
    int power = base[idx];
    base[idx] = 0;
    LaurentPoly term = monomial(c, std::move(base), vars_);
    if (power != 0) term *= value.pow(power);
    out += term;
  }
  return out;
}

Rat LaurentPoly::evaluate(const std::vector<Rat>& point) const {
  if (point.size() != vars_->size())
    throw std::invalid_argument("evaluation point size does not match variable list");
  for (const Rat& x : point)
    if (cgkit::is_zero(x)) throw std::domain_error("evaluation at a zero coordinate");
  Rat acc(0);
  for (const auto& [e, c] : terms_) {
    Rat term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term *= rat_pow(point[i], e[i]);
    acc += term;
  }
  return acc;
}

std::uint64_t LaurentPoly::evaluate_mod(const std::vector<std::uint64_t>& point,
                                        std::uint64_t prime) const {
  if (point.size() != vars_->size())
    throw std::invalid_argument("evaluation point size does not match variable list");
  std::vector<std::uint64_t> residues(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    residues[i] = point[i] % prime;
    if (residues[i] == 0)
      throw std::domain_error("evaluation at a non-invertible residue");
  }
  std::uint64_t acc = 0;
  for (const auto& [e, c] : terms_) {
    std::uint64_t term = fp::to_residue(c, prime);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      std::uint64_t base = residues[i];
      long exp = e[i];
      if (exp < 0) {
        base = fp::inv(base, prime);
        exp = -exp;
      }
      term = fp::mul(term, fp::pow(base, static_cast<std::uint64_t>(exp), prime), prime);
    }
    acc = fp::add(acc, term, prime);
  }
  return acc;
}

LaurentPoly::Jet LaurentPoly::first_order(const std::vector<Rat>& direction) const {
  if (direction.size() != vars_->size())
    throw std::invalid_argument("direction size does not match variable list");
  Jet jet{Rat(0), Rat(0)};
  for (const auto& [e, c] : terms_) {
    jet.value += c;
    Rat slope(0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) slope += Rat(e[i]) * direction[i];
    jet.derivative += c * slope;
  }
  return jet;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rat mag = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    std::string vars_part;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!vars_part.empty()) vars_part += "*";
      vars_part += (*vars_)[i];
      if (e[i] != 1) vars_part += "^" + std::to_string(e[i]);
    }
    if (vars_part.empty()) {
      os << mag.str();
    } else {
      if (mag != 1) os << mag.str() << "*";
      os << vars_part;
    }
  }
  return os.str();
}

}  // namespace cgkit
