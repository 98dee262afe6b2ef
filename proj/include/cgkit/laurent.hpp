#pragma once

#include "cgkit/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cgkit {

using VarList = std::vector<std::string>;
using VarListPtr = std::shared_ptr<const VarList>;

// Multivariate Laurent polynomial with exact rational coefficients.
//
// A value is a map from exponent vectors (one signed entry per variable) to
// nonzero rational coefficients; the zero polynomial has an empty map, so
// structural equality is semantic equality. Pure value semantics: distinct
// values share nothing mutable.
class LaurentPoly {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, Rat>;

  // Zero polynomial over the default variables {q, p}.
  LaurentPoly() : vars_(default_vars()) {}
  explicit LaurentPoly(VarListPtr vars) : vars_(std::move(vars)) {}
  // Constant in the default ring.
  explicit LaurentPoly(long c) : vars_(default_vars()) {
    if (c != 0) terms_[Exponents(2, 0)] = Rat(c);
  }
  explicit LaurentPoly(const Rat& c) : vars_(default_vars()) {
    if (!cgkit::is_zero(c)) terms_[Exponents(2, 0)] = c;
  }

  static VarListPtr default_vars();
  static VarListPtr make_vars(std::vector<std::string> names);

  static LaurentPoly zero(VarListPtr vars = default_vars());
  static LaurentPoly constant(const Rat& c, VarListPtr vars = default_vars());
  static LaurentPoly monomial(const Rat& coeff, Exponents exps,
                              VarListPtr vars = default_vars());
  static LaurentPoly variable(std::string_view name, int power = 1,
                              VarListPtr vars = default_vars());

  // Shorthands in the default {q, p} ring.
  static LaurentPoly q(int power = 1);
  static LaurentPoly p(int power = 1);
  static LaurentPoly one() { return LaurentPoly(1); }

  const VarList& vars() const { return *vars_; }
  VarListPtr vars_ptr() const { return vars_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t term_count() const { return terms_.size(); }

  // Coefficient of an exponent vector (zero if absent).
  Rat coeff(const Exponents& e) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rat& c);
  LaurentPoly operator-() const;

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rat& c) { return a *= c; }
  friend LaurentPoly operator*(const Rat& c, LaurentPoly a) { return a *= c; }

  // Equal iff the variable lists agree and the term maps agree.
  bool operator==(const LaurentPoly& o) const;
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  // x^e; negative e requires a single-term operand (units of the ring are
  // exactly the nonzero monomials). Throws std::domain_error otherwise.
  LaurentPoly pow(int e) const;

  // Inverse of a nonzero monomial; throws std::domain_error otherwise.
  LaurentPoly monomial_inverse() const;

  // Image under every variable v -> v^-1 (a ring automorphism).
  LaurentPoly substitute_inverse() const;

  // Replaces one variable by a monomial in the same ring (e.g. q -> p^n,
  // p -> 1). Throws std::invalid_argument on unknown name, std::domain_error
  // when value is not a nonzero monomial and the variable actually occurs
  // with a nonzero exponent.
  LaurentPoly substitute_var(std::string_view name, const LaurentPoly& value) const;

  // Exact evaluation at a point with one nonzero rational per variable.
  // Throws std::invalid_argument on size mismatch, std::domain_error on a
  // zero coordinate.
  Rat evaluate(const std::vector<Rat>& point) const;

  // Evaluation at residues mod a prime; every coordinate must be invertible.
  std::uint64_t evaluate_mod(const std::vector<std::uint64_t>& point,
                             std::uint64_t prime) const;

  // First-order data along the one-parameter curve v_i = exp(u_i * h):
  // value at h = 0 and d/dh at h = 0. Ring homomorphism to dual numbers.
  struct Jet {
    Rat value;
    Rat derivative;
  };
  Jet first_order(const std::vector<Rat>& direction) const;

  std::string str() const;

 private:
  void trim();
  void require_same_ring(const LaurentPoly& o) const;

  VarListPtr vars_;
  TermMap terms_;
};

inline bool is_zero(const LaurentPoly& x) { return x.is_zero(); }

}  // namespace cgkit
