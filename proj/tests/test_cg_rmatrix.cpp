#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cgkit/cg_rmatrix.hpp"

using cgkit::build_cg;
using cgkit::build_twist_Q;
using cgkit::check_hecke;
using cgkit::check_semiclassical;
using cgkit::check_structure_identities;
using cgkit::check_twist_identity;
using cgkit::check_yang_baxter;
using cgkit::hecke_inverse;
using cgkit::LaurentOperator;
using cgkit::LaurentPoly;
using cgkit::Rat;
using cgkit::RatOperator;
using cgkit::semiclassical_limit;
using cgkit::twist;

namespace {

LaurentPoly mono(long c, int eq, int ep) {
  return LaurentPoly::monomial(Rat(c), {eq, ep});
}

}  // namespace

TEST_CASE("smallest case has a single diagonal entry") {
  const LaurentOperator r = build_cg({1, false});
  CHECK(r.nnz() == 1);
  CHECK(r.entry({1, 1}, {1, 1}) == mono(1, 1, -1));
}

TEST_CASE("two-dimensional matrix entries") {
  const LaurentOperator r = build_cg({2, false});
  CHECK(r.nnz() == 5);
  CHECK(r.entry({1, 1}, {1, 1}) == mono(1, 1, -1));
  CHECK(r.entry({2, 2}, {2, 2}) == mono(1, 1, -1));
  CHECK(r.entry({1, 2}, {1, 2}) == mono(1, -1, 1));
  CHECK(r.entry({2, 1}, {2, 1}) == mono(1, 1, -3));
  CHECK(r.entry({1, 2}, {2, 1}) == mono(1, 1, -1) + mono(-1, -1, -1));
  CHECK(r.entry({2, 1}, {1, 2}) == LaurentPoly::zero());
}

TEST_CASE("three-dimensional matrix spot entries from the closed form") {
  const LaurentOperator r = build_cg({3, false});
  // Diagonal family: q^{\pm 1} p^{2(j-i)-1} depending on the order of (i,j).
  CHECK(r.entry({3, 1}, {3, 1}) == mono(1, 1, -5));
  CHECK(r.entry({1, 3}, {1, 3}) == mono(1, -1, 3));
  CHECK(r.entry({2, 2}, {2, 2}) == mono(1, 1, -1));
  // Lower exchange band (input (3,1)): (q - q^-1) p^{2(l-i)-1}.
  CHECK(r.entry({1, 3}, {3, 1}) == mono(1, 1, -1) + mono(-1, -1, -1));
  CHECK(r.entry({2, 2}, {3, 1}) == mono(1, 1, -3) + mono(-1, -1, -3));
  // Upper exchange band (input (1,3)): (q^-1 - q) p^{2(l-i)-1}.
  CHECK(r.entry({2, 2}, {1, 3}) == mono(1, -1, 1) + mono(-1, 1, 1));
  // No entry flows against the homogeneity constraint i+j = k+l.
  CHECK(r.entry({3, 1}, {1, 3}) == LaurentPoly::zero());
  CHECK(r.entry({1, 1}, {2, 1}) == LaurentPoly::zero());
}

TEST_CASE("one-parameter mode substitutes q -> p^n") {
  const LaurentOperator r = build_cg({2, true});
  CHECK(r.nnz() == 5);
  CHECK(r.entry({1, 1}, {1, 1}) == LaurentPoly::p());
  CHECK(r.entry({1, 2}, {1, 2}) == LaurentPoly::p(-1));
  CHECK(r.entry({2, 1}, {2, 1}) == LaurentPoly::p(-1));
  CHECK(r.entry({1, 2}, {2, 1}) == LaurentPoly::p() - LaurentPoly::p(-3));
  const LaurentOperator r2 = build_cg({2, false});
  CHECK(r == r2.map_entries([](const LaurentPoly& c) {
    return c.substitute_var("q", LaurentPoly::p(2));
  }));
}

TEST_CASE("specializing both parameters to one yields the identity") {
  for (int n = 1; n <= 4; ++n) {
    const LaurentOperator r = build_cg({n, false});
    const std::vector<Rat> one{Rat(1), Rat(1)};
    const auto at_one =
        r.map_entries([&](const LaurentPoly& v) { return v.evaluate(one); });
    CHECK(at_one == RatOperator::identity(n, 2, Rat(1)));
  }
}

TEST_CASE("Yang-Baxter and braid relations hold exactly") {
  for (int n = 2; n <= 4; ++n) {
    const auto rep = check_yang_baxter(build_cg({n, false}));
    CHECK(rep.all_passed());
  }
  CHECK(check_yang_baxter(build_cg({3, true})).all_passed());
}

TEST_CASE("Hecke quadratic relation holds exactly") {
  for (int n = 2; n <= 4; ++n) CHECK(check_hecke(build_cg({n, false})).all_passed());
}

TEST_CASE("the identity operator is not a Hecke solution") {
  const LaurentOperator id = LaurentOperator::identity(2, 2, LaurentPoly::one());
  CHECK_FALSE(check_hecke(id).all_passed());
}

TEST_CASE("a corrupted operator fails Yang-Baxter with a witness") {
  LaurentOperator r = build_cg({3, false});
  r.set_entry({2, 2}, {3, 1}, LaurentPoly::zero());
  const auto rep = check_yang_baxter(r);
  CHECK_FALSE(rep.all_passed());
  bool witnessed = false;
  for (const auto& c : rep.checks)
    if (c.status == cgkit::CheckEntry::Status::fail && c.witness_location &&
        c.witness_value)
      witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("the Hecke inverse composes to the identity on both sides") {
  for (int n = 2; n <= 3; ++n) {
    const LaurentOperator r = build_cg({n, false});
    const LaurentOperator rinv = hecke_inverse(r);
    const LaurentOperator id = LaurentOperator::identity(n, 2, LaurentPoly::one());
    CHECK(r * rinv == id);
    CHECK(rinv * r == id);
  }
}

TEST_CASE("inverse entries agree with substituting inverted parameters") {
  const LaurentOperator rinv = hecke_inverse(build_cg({2, false}));
  CHECK(rinv.entry({1, 1}, {1, 1}) == mono(1, -1, 1));
  CHECK(rinv.entry({1, 2}, {2, 1}) == mono(1, -1, 1) + mono(-1, 1, 1));
  const LaurentOperator r3 = build_cg({3, false});
  CHECK(hecke_inverse(r3) ==
        r3.map_entries([](const LaurentPoly& v) { return v.substitute_inverse(); }));
}

TEST_CASE("structure identities hold for each size") {
  for (int n = 2; n <= 4; ++n) CHECK(check_structure_identities(n).all_passed());
}

TEST_CASE("twist operator is diagonal with opposite off-diagonal powers") {
  const LaurentOperator q2 = build_twist_Q(2);
  CHECK(q2.nnz() == 4);
  CHECK(q2.entry({1, 1}, {1, 1}) == LaurentPoly::one());
  CHECK(q2.entry({2, 2}, {2, 2}) == LaurentPoly::one());
  CHECK(q2.entry({1, 2}, {1, 2}) == LaurentPoly::p());
  CHECK(q2.entry({2, 1}, {2, 1}) == LaurentPoly::p(-1));
}

TEST_CASE("the twisted operator still solves Yang-Baxter") {
  for (int n = 2; n <= 3; ++n) {
    const LaurentOperator r = build_cg({n, false});
    const LaurentOperator rt = twist(r, build_twist_Q(n));
    CHECK(cgkit::ybe_residual(rt).is_zero());
  }
}

TEST_CASE("twist identity suite") {
  for (int n = 2; n <= 4; ++n) CHECK(check_twist_identity(n).all_passed());
}

TEST_CASE("first-order term along the diagonal ray") {
  const LaurentOperator r = build_cg({2, false});
  const RatOperator slope = semiclassical_limit(r, Rat(1), Rat(1));
  CHECK(slope.entry({1, 1}, {1, 1}) == Rat(0));
  CHECK(slope.entry({1, 2}, {2, 1}) == Rat(2));
}

TEST_CASE("first-order term along the balanced ray") {
  const LaurentOperator r = build_cg({2, false});
  const RatOperator slope = semiclassical_limit(r, Rat(2), Rat(1));
  CHECK(slope.entry({1, 1}, {1, 1}) == Rat(1));
  CHECK(slope.entry({2, 2}, {2, 2}) == Rat(1));
  CHECK(slope.entry({1, 2}, {1, 2}) == Rat(-1));
  CHECK(slope.entry({2, 1}, {2, 1}) == Rat(-1));
  CHECK(slope.entry({1, 2}, {2, 1}) == Rat(4));
  CHECK(cgkit::cybe_residual(slope).is_zero());
}

TEST_CASE("first-order checks pass for the default ray") {
  CHECK(check_semiclassical(2, Rat(2), Rat(1), nullptr).all_passed());
  CHECK(check_semiclassical(3, Rat(3), Rat(1), nullptr).all_passed());
}

TEST_CASE("an operator that is not one at the origin is rejected") {
  LaurentOperator bad = LaurentOperator::identity(2, 2, LaurentPoly::one());
  bad.set_entry({1, 1}, {1, 1}, LaurentPoly(2));
  CHECK_THROWS_AS(semiclassical_limit(bad, Rat(1), Rat(1)), std::domain_error);
}
