#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cgkit/modular.hpp"
#include "cgkit/quantum.hpp"

#include <algorithm>
#include <vector>

using cgkit::a_sigma;
using cgkit::Alphabet;
using cgkit::braiding_pair;
using cgkit::build_cg;
using cgkit::check_det_normality;
using cgkit::check_det_pairings;
using cgkit::check_det_properties;
using cgkit::exterior_relations;
using cgkit::frt_relations;
using cgkit::FunctionalMatrix;
using cgkit::graded_dimension;
using cgkit::ideal_membership;
using cgkit::l_functionals;
using cgkit::lambda_normal_form;
using cgkit::LaurentOperator;
using cgkit::LaurentPoly;
using cgkit::MembershipMode;
using cgkit::NCPolynomial;
using cgkit::psi_phi_check;
using cgkit::quantum_determinant;
using cgkit::Rat;
using cgkit::symmetric_relations;
using cgkit::Word;

namespace {

constexpr std::uint64_t kPrime = cgkit::fp::default_prime;

LaurentPoly mono(long c, int eq, int ep) {
  return LaurentPoly::monomial(Rat(c), {eq, ep});
}

NCPolynomial xword(int n, const std::vector<int>& letters,
                   const LaurentPoly& coeff = LaurentPoly(1)) {
  const Alphabet alph{Alphabet::Kind::X, n};
  Word w;
  for (int i : letters) w.push_back(static_cast<std::uint16_t>(alph.x_code(i)));
  return NCPolynomial::monomial(alph, w, coeff);
}

NCPolynomial tword(int n, const std::vector<std::pair<int, int>>& letters,
                   const LaurentPoly& coeff = LaurentPoly(1)) {
  const Alphabet alph{Alphabet::Kind::T, n};
  Word w;
  for (auto [i, k] : letters)
    w.push_back(static_cast<std::uint16_t>(alph.t_code(i, k)));
  return NCPolynomial::monomial(alph, w, coeff);
}

int perm_sign(const std::vector<int>& s) {
  int inv = 0;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (s[a] > s[b]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST_CASE("exterior presentation carries the expected diagonal relation") {
  const auto pres = exterior_relations(build_cg({2, false}));
  CHECK(pres.alphabet.kind == Alphabet::Kind::X);
  CHECK(pres.alphabet.n == 2);
  CHECK(pres.relations.size() == 4);
  const NCPolynomial expected =
      xword(2, {1, 1}, LaurentPoly::q(-1) + LaurentPoly::q());
  CHECK(std::find(pres.relations.begin(), pres.relations.end(), expected) !=
        pres.relations.end());
}

TEST_CASE("exterior ideal fixes the sign of the exchange relation") {
  // The two-term rewrite in the quotient is x2 x1 = -p^2 x1 x2; the variant
  // with the inverted power is NOT in the ideal, so membership is an exact
  // arbiter between the two sign conventions.
  const auto pres = exterior_relations(build_cg({2, false}));
  const auto exact = MembershipMode::exact();
  const NCPolynomial good = xword(2, {2, 1}) + xword(2, {1, 2}, mono(1, 0, 2));
  const NCPolynomial bad = xword(2, {2, 1}) + xword(2, {1, 2}, mono(1, 0, -2));
  CHECK(ideal_membership(good, pres, exact));
  CHECK_FALSE(ideal_membership(bad, pres, exact));
  CHECK(ideal_membership(xword(2, {1, 1}), pres, exact));
  // Random-specialization mode agrees with exact elimination.
  const auto spec = MembershipMode::specialized(kPrime, 2024, 3);
  CHECK(ideal_membership(good, pres, spec));
  CHECK_FALSE(ideal_membership(bad, pres, spec));
}

TEST_CASE("symmetric ideal contains its exchange relation") {
  const auto pres = symmetric_relations(build_cg({2, false}));
  CHECK(pres.relations.size() == 4);
  const auto exact = MembershipMode::exact();
  const NCPolynomial good = xword(2, {2, 1}) + xword(2, {1, 2}, mono(-1, -2, 2));
  const NCPolynomial bad = xword(2, {2, 1}) - xword(2, {1, 2});
  CHECK(ideal_membership(good, pres, exact));
  CHECK_FALSE(ideal_membership(bad, pres, exact));
}

TEST_CASE("exterior normal form rewrites words to increasing order") {
  CHECK(lambda_normal_form({1, 2, 3}, 3) == xword(3, {1, 2, 3}));
  CHECK(lambda_normal_form({2, 1}, 2) == xword(2, {1, 2}, mono(-1, 0, 2)));
  CHECK(lambda_normal_form({2, 3, 1}, 3) == xword(3, {1, 2, 3}, mono(1, 0, 6)));
  CHECK(lambda_normal_form({1, 1}, 2).is_zero());
  CHECK(lambda_normal_form({1, 2, 1}, 3).is_zero());
  CHECK_THROWS_AS(lambda_normal_form({0, 1}, 2), std::invalid_argument);
}

TEST_CASE("permutation coefficients specialize to signs") {
  CHECK(a_sigma({2, 1}) == mono(-1, 0, 2));
  CHECK(a_sigma({1, 2, 3}) == LaurentPoly::one());
  const LaurentPoly one = LaurentPoly::one();
  for (int n : {3, 4}) {
    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = i + 1;
    do {
      CHECK(a_sigma(sigma).substitute_var("p", one) ==
            LaurentPoly(perm_sign(sigma)));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  CHECK_THROWS_AS(a_sigma({1, 1}), std::invalid_argument);
}

TEST_CASE("permutation coefficients match the exterior normal form") {
  std::vector<int> sigma{1, 2, 3};
  do {
    CHECK(lambda_normal_form(sigma, 3) ==
          a_sigma(sigma) * xword(3, {1, 2, 3}));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

TEST_CASE("quantum determinant for rank two") {
  const NCPolynomial det = quantum_determinant(2);
  const NCPolynomial expected =
      tword(2, {{1, 1}, {2, 2}}) + tword(2, {{1, 2}, {2, 1}}, mono(-1, 0, 2));
  CHECK(det == expected);
}

TEST_CASE("quantum determinant for rank three") {
  const NCPolynomial det = quantum_determinant(3);
  CHECK(det.term_count() == 6);
  const Alphabet alph{Alphabet::Kind::T, 3};
  const Word diag{static_cast<std::uint16_t>(alph.t_code(1, 1)),
                  static_cast<std::uint16_t>(alph.t_code(2, 2)),
                  static_cast<std::uint16_t>(alph.t_code(3, 3))};
  REQUIRE(det.terms().count(diag) == 1);
  CHECK(det.terms().at(diag) == LaurentPoly::one());
}

TEST_CASE("bialgebra relation span has the flat graded dimensions") {
  const auto pres = frt_relations(build_cg({2, false}));
  CHECK(pres.relations.size() == 16);
  const auto d1 = graded_dimension(pres, 1, kPrime, 11, 3);
  const auto d2 = graded_dimension(pres, 2, kPrime, 11, 3);
  const auto d3 = graded_dimension(pres, 3, kPrime, 11, 3);
  CHECK(d1.dimension == 4);
  CHECK(d2.dimension == 10);
  CHECK(d3.dimension == 20);
  CHECK(d2.unanimous);
  CHECK(d3.unanimous);
  CHECK(d2.per_trial.size() == 3);
  // The identity operator presents the commutative polynomial ring on the
  // four generators, whose graded dimensions coincide (flat deformation).
  const auto flat = frt_relations(
      LaurentOperator::identity(2, 2, LaurentPoly::one()));
  CHECK(graded_dimension(flat, 2, kPrime, 11, 3).dimension == 10);
  CHECK(graded_dimension(flat, 3, kPrime, 11, 3).dimension == 20);
}

TEST_CASE("exterior and symmetric algebras have classical dimensions") {
  const auto lam = exterior_relations(build_cg({3, false}));
  const long lam_expect[] = {3, 3, 1, 0};
  for (int d = 1; d <= 4; ++d)
    CHECK(graded_dimension(lam, d, kPrime, 5, 3).dimension == lam_expect[d - 1]);
  const auto sym = symmetric_relations(build_cg({2, false}));
  CHECK(graded_dimension(sym, 2, kPrime, 5, 3).dimension == 3);
  CHECK(graded_dimension(sym, 3, kPrime, 5, 3).dimension == 4);
}

TEST_CASE("graded dimension rejects bad arguments") {
  const auto pres = exterior_relations(build_cg({2, false}));
  CHECK_THROWS_AS(graded_dimension(pres, -1, kPrime, 1, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(graded_dimension(pres, 2, kPrime, 1, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(graded_dimension(pres, 2, 2, 1, 3), std::invalid_argument);
}

TEST_CASE("ideal membership guards degrees and alphabets") {
  const auto pres = frt_relations(build_cg({2, false}));
  const auto exact = MembershipMode::exact();
  // Degree-one elements are never in the quadratic ideal.
  CHECK_FALSE(ideal_membership(tword(2, {{1, 1}}), pres, exact));
  CHECK(ideal_membership(NCPolynomial(pres.alphabet), pres, exact));
  CHECK_THROWS_AS(ideal_membership(xword(2, {1, 2}), pres, exact),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      ideal_membership(xword(2, {1, 1, 1, 1, 1}),
                       exterior_relations(build_cg({2, false})), exact),
      std::invalid_argument);
}

TEST_CASE("cobraiding form on generators reproduces the matrix entries") {
  const LaurentOperator r = build_cg({2, false});
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int c = 1; c <= 2; ++c)
        for (int d = 1; d <= 2; ++d)
          CHECK(braiding_pair(tword(2, {{a, b}}), tword(2, {{c, d}}), r) ==
                r.entry({d, b}, {c, a}));
}

TEST_CASE("cobraiding form against empty words is the counit") {
  const LaurentOperator r = build_cg({2, false});
  const Alphabet alph{Alphabet::Kind::T, 2};
  const NCPolynomial unit = NCPolynomial::monomial(alph, {});
  CHECK(braiding_pair(unit, unit, r) == LaurentPoly::one());
  CHECK(braiding_pair(unit, tword(2, {{1, 1}}), r) == LaurentPoly::one());
  CHECK(braiding_pair(unit, tword(2, {{1, 2}}), r) == LaurentPoly::zero());
  CHECK(braiding_pair(tword(2, {{2, 1}}), unit, r) == LaurentPoly::zero());
}

TEST_CASE("determinant pairings against generators are frozen monomials") {
  const LaurentOperator r = build_cg({2, false});
  const NCPolynomial det = quantum_determinant(2);
  CHECK(braiding_pair(det, tword(2, {{1, 1}}), r) == LaurentPoly::one());
  CHECK(braiding_pair(det, tword(2, {{2, 2}}), r) == mono(1, 2, -4));
  CHECK(braiding_pair(det, tword(2, {{1, 2}}), r) == LaurentPoly::zero());
  CHECK(braiding_pair(tword(2, {{1, 1}}), det, r) == mono(1, 2, -4));
  CHECK(braiding_pair(tword(2, {{2, 2}}), det, r) == LaurentPoly::one());
  // Bilinearity over sums of generators.
  CHECK(braiding_pair(det, tword(2, {{1, 1}}) + tword(2, {{2, 2}}), r) ==
        LaurentPoly::one() + mono(1, 2, -4));
}

TEST_CASE("determinant pairing suite passes for small ranks") {
  for (int n = 2; n <= 4; ++n) CHECK(check_det_pairings(n).all_passed());
}

TEST_CASE("determinant is normal in the relation ideal") {
  CHECK(check_det_normality(2, kPrime, 1, 3).all_passed());
  CHECK(check_det_normality(3, kPrime, 1, 3).all_passed());
  CHECK(check_det_properties(2, kPrime, 7).all_passed());
}

TEST_CASE("generator functionals satisfy triangularity and shifts") {
  for (int n = 2; n <= 4; ++n) CHECK(l_functionals(n).all_passed());
}

TEST_CASE("functional matrices for rank two are frozen") {
  std::vector<FunctionalMatrix> mats;
  REQUIRE(l_functionals(2, &mats).all_passed());
  REQUIRE(mats.size() == 8);
  // Layout: plus functionals first, each block indexed by (i-1)*n + (k-1).
  const FunctionalMatrix& plus22 = mats[3];
  const FunctionalMatrix& minus11 = mats[4];
  CHECK(plus22.l_plus);
  CHECK(plus22.i == 2);
  CHECK(plus22.k == 2);
  CHECK_FALSE(minus11.l_plus);
  CHECK(minus11.i == 1);
  CHECK(minus11.k == 1);
  const std::vector<LaurentPoly> diag{mono(1, -1, 1), LaurentPoly::zero(),
                                      LaurentPoly::zero(), mono(1, 1, -1)};
  CHECK(minus11.on_t == diag);
  CHECK(plus22.on_t == diag);
  // Strict triangularity: the plus functional below the diagonal vanishes.
  const FunctionalMatrix& plus21 = mats[2];
  CHECK(plus21.i == 2);
  CHECK(plus21.k == 1);
  for (const auto& v : plus21.on_t) CHECK(v.is_zero());
  for (const auto& v : plus21.on_st) CHECK(v.is_zero());
}

TEST_CASE("corner functionals and determinant functionals are consistent") {
  CHECK(psi_phi_check(2, 3).all_passed());
  CHECK(psi_phi_check(3, 3).all_passed());
  CHECK_THROWS_AS(psi_phi_check(6, 3), std::invalid_argument);
}
