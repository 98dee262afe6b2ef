#pragma once

#include "cgkit/laurent.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cgkit {

// Generator alphabet for noncommutative polynomials: either the n^2 matrix
// generators T_i^k (letter code (i-1)*n + (k-1)) or the n exterior/symmetric
// generators x_i (letter code i-1).
struct Alphabet {
  enum class Kind { T, X };

  Kind kind = Kind::T;
  int n = 0;

  int size() const { return kind == Kind::T ? n * n : n; }

  int t_code(int i, int k) const;        // 1-based (i,k) -> letter code
  std::pair<int, int> t_indices(int code) const;
  int x_code(int i) const;               // 1-based i -> letter code
  int x_index(int code) const;

  // Additive word grading used to block rank computations: T letters grade
  // by (lower index, upper index), x letters by (index, 0).
  std::pair<int, int> letter_grade(int code) const;

  std::string letter_name(int code) const;
  // Inverse of letter_name; throws std::invalid_argument on unknown names.
  int letter_from_name(const std::string& name) const;

  bool operator==(const Alphabet& o) const { return kind == o.kind && n == o.n; }
  bool operator!=(const Alphabet& o) const { return !(*this == o); }
};

using Word = std::vector<std::uint16_t>;

// Noncommutative polynomial: finitely many words with nonzero LaurentPoly
// coefficients over a fixed alphabet. Canonical form stores no zero terms.
class NCPolynomial {
 public:
  using TermMap = std::map<Word, LaurentPoly>;

  explicit NCPolynomial(Alphabet alphabet) : alphabet_(alphabet) {}

  static NCPolynomial monomial(Alphabet alphabet, Word w,
                               LaurentPoly coeff = LaurentPoly(1));

  const Alphabet& alphabet() const { return alphabet_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Word& w, const LaurentPoly& coeff);

  NCPolynomial& operator+=(const NCPolynomial& o);
  NCPolynomial& operator-=(const NCPolynomial& o);
  NCPolynomial& operator*=(const NCPolynomial& o);  // concatenation product
  NCPolynomial& operator*=(const LaurentPoly& c);

  friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) { return a += b; }
  friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) { return a -= b; }
  friend NCPolynomial operator*(NCPolynomial a, const NCPolynomial& b) { return a *= b; }
  friend NCPolynomial operator*(NCPolynomial a, const LaurentPoly& c) { return a *= c; }
  friend NCPolynomial operator*(const LaurentPoly& c, NCPolynomial a) { return a *= c; }

  bool operator==(const NCPolynomial& o) const {
    return alphabet_ == o.alphabet_ && terms_ == o.terms_;
  }
  bool operator!=(const NCPolynomial& o) const { return !(*this == o); }

  // Degree when all words share one length; -1 for the zero polynomial;
  // throws std::domain_error when inhomogeneous.
  int homogeneous_degree() const;

  std::string str() const;

 private:
  void require_same_alphabet(const NCPolynomial& o) const;

  Alphabet alphabet_;
  TermMap terms_;
};

// Degree-2 relations presenting a quadratic algebra.
struct QuadraticPresentation {
  Alphabet alphabet;
  std::vector<NCPolynomial> relations;
};

}  // namespace cgkit
