#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cgkit/bd.hpp"

#include <vector>

using cgkit::AdmissibleTriple;
using cgkit::BDQuadruple;
using cgkit::bd_r_matrix;
using cgkit::build_f;
using cgkit::build_reductive;
using cgkit::casimir_tensor;
using cgkit::cg_pipeline;
using cgkit::cg_triple;
using cgkit::check_bialgebra;
using cgkit::check_flb;
using cgkit::EndoF;
using cgkit::QuotientData;
using cgkit::Rat;
using cgkit::RatMatrix;
using cgkit::RatOperator;
using cgkit::RatVector;
using cgkit::ReductiveAlgebra;
using cgkit::solve_f0;
using cgkit::subalgebra_analysis;
using cgkit::tau_order;
using cgkit::validate_triple;

namespace {

bool has_failing_entry(const cgkit::Report& rep, const std::string& name) {
  for (const auto& c : rep.checks)
    if (c.name == name && c.status == cgkit::CheckEntry::Status::fail)
      return true;
  return false;
}

bool has_entry(const cgkit::Report& rep, const std::string& name) {
  for (const auto& c : rep.checks)
    if (c.name == name) return true;
  return false;
}

}  // namespace

TEST_CASE("trace-form algebras have the expected shape") {
  const auto sl3 = build_reductive(ReductiveAlgebra::Type::sl, 3);
  CHECK(sl3.dim == 8);
  CHECK(sl3.cartan_dim == 2);
  CHECK(sl3.num_positive == 3);
  const std::vector<std::pair<int, int>> lex{{1, 2}, {1, 3}, {2, 3}};
  CHECK(sl3.positive == lex);
  CHECK(sl3.gram == RatMatrix(sl3.gram.transpose()));
  CHECK(sl3.kappa(sl3.simple_coroot(1), sl3.simple_coroot(2)) == Rat(-1));
  CHECK(sl3.kappa(sl3.simple_coroot(1), sl3.simple_coroot(1)) == Rat(2));
  CHECK(sl3.kappa(sl3.root_vector({1, 2}), sl3.root_vector({2, 1})) == Rat(1));
  CHECK(sl3.kappa(sl3.root_vector({1, 2}), sl3.root_vector({1, 3})) == Rat(0));

  const auto gl2 = build_reductive(ReductiveAlgebra::Type::gl, 2);
  CHECK(gl2.dim == 4);
  CHECK(gl2.cartan_dim == 2);
}

TEST_CASE("bracket of opposite root vectors is the coroot") {
  const auto g = build_reductive(ReductiveAlgebra::Type::sl, 4);
  for (const auto& root : g.positive) {
    const RatMatrix e = g.root_vector(root);
    const RatMatrix f = g.root_vector({root.second, root.first});
    CHECK(ReductiveAlgebra::bracket(e, f) == g.coroot(root));
  }
}

TEST_CASE("trace form is invariant under the bracket") {
  const auto g = build_reductive(ReductiveAlgebra::Type::sl, 3);
  for (int a = 0; a < g.dim; a += 3)
    for (int b = 1; b < g.dim; b += 2)
      for (int c = 0; c < g.dim; c += 2) {
        const RatMatrix x = g.basis[a], y = g.basis[b], z = g.basis[c];
        CHECK(g.kappa(ReductiveAlgebra::bracket(x, y), z) ==
              g.kappa(x, ReductiveAlgebra::bracket(y, z)));
      }
}

TEST_CASE("dual basis resolves arbitrary elements") {
  const auto g = build_reductive(ReductiveAlgebra::Type::sl, 3);
  const auto duals = g.dual_basis();
  RatVector v(g.dim);
  for (int i = 0; i < g.dim; ++i) v(i) = Rat(2 * i - 5, i + 1);
  const RatMatrix x = g.from_coords(v);
  RatMatrix resolved = RatMatrix::Zero(g.m, g.m);
  for (int mu = 0; mu < g.dim; ++mu)
    resolved += g.kappa(x, g.basis[mu]) * duals[mu];
  CHECK(resolved == x);
}

TEST_CASE("coordinates round-trip and reject outsiders") {
  const auto g = build_reductive(ReductiveAlgebra::Type::sl, 3);
  RatVector v(g.dim);
  for (int i = 0; i < g.dim; ++i) v(i) = Rat(i - 3, 2);
  CHECK(g.coords(g.from_coords(v)) == v);
  // The identity has nonzero trace, hence lies outside sl.
  const RatMatrix outside = RatMatrix::Identity(3, 3);
  CHECK_THROWS_AS(g.coords(outside), std::invalid_argument);
}

TEST_CASE("shift triple data") {
  const auto t3 = cg_triple(3);
  CHECK(t3.b1 == std::vector<int>{1});
  CHECK(t3.b2 == std::vector<int>{2});
  CHECK(t3.tau.at(1) == 2);
  const auto t2 = cg_triple(2);
  CHECK(t2.b1.empty());
  CHECK(t2.b2.empty());
  CHECK(t2.tau.empty());
}

TEST_CASE("shift triples validate for small ranks") {
  for (int m = 3; m <= 5; ++m) {
    const auto g = build_reductive(ReductiveAlgebra::Type::sl, m);
    CHECK(validate_triple(g, cg_triple(m)).all_passed());
  }
}

TEST_CASE("a cyclic tau fails the orbit-escape requirement") {
  const auto g = build_reductive(ReductiveAlgebra::Type::sl, 3);
  AdmissibleTriple cyc;
  cyc.b1 = {1};
  cyc.b2 = {1};
  cyc.tau = {{1, 1}};
  const auto rep = validate_triple(g, cyc);
  CHECK_FALSE(rep.all_passed());
  CHECK(has_failing_entry(rep, "triple-orbit-escape"));
}

TEST_CASE("malformed triples are rejected outright") {
  const auto g = build_reductive(ReductiveAlgebra::Type::sl, 4);
  AdmissibleTriple not_bijective;
  not_bijective.b1 = {1, 2};
  not_bijective.b2 = {2, 3};
  not_bijective.tau = {{1, 2}};
  CHECK_THROWS_AS(validate_triple(g, not_bijective), std::invalid_argument);
  AdmissibleTriple out_of_range;
  out_of_range.b1 = {9};
  out_of_range.b2 = {2};
  out_of_range.tau = {{9, 2}};
  CHECK_THROWS_AS(validate_triple(g, out_of_range), std::invalid_argument);
}

TEST_CASE("Cartan correction is unique for the shift triple") {
  const auto g = build_reductive(ReductiveAlgebra::Type::sl, 3);
  const auto sol = solve_f0(g, cg_triple(3));
  CHECK(sol.consistent);
  CHECK(sol.freedom == 0);
  RatMatrix expected(2, 2);
  expected << Rat(1, 3), Rat(1, 3), Rat(-1, 3), Rat(2, 3);
  CHECK(sol.f0 == expected);
}

TEST_CASE("Cartan correction for empty triples") {
  const auto sl2 = build_reductive(ReductiveAlgebra::Type::sl, 2);
  const auto sol2 = solve_f0(sl2, cg_triple(2));
  CHECK(sol2.consistent);
  CHECK(sol2.freedom == 0);
  RatMatrix half(1, 1);
  half << Rat(1, 2);
  CHECK(sol2.f0 == half);
  // gl(2) has a two-dimensional Cartan, so the skew part gains one degree of
  // freedom once no orbit constraints pin it down.
  const auto gl2 = build_reductive(ReductiveAlgebra::Type::gl, 2);
  AdmissibleTriple empty;
  const auto solg = solve_f0(gl2, empty);
  CHECK(solg.consistent);
  CHECK(solg.freedom == 1);
}

TEST_CASE("root order extends tau along consecutive supports") {
  const auto sl3 = build_reductive(ReductiveAlgebra::Type::sl, 3);
  const auto ord3 = tau_order(sl3, cg_triple(3));
  CHECK(ord3.positive.size() == 3);
  CHECK(ord3.geq.size() == 4);  // three diagonal pairs plus (alpha_1, alpha_2)
  const std::pair<std::pair<int, int>, std::pair<int, int>> shift{{1, 2},
                                                                  {2, 3}};
  CHECK(std::find(ord3.geq.begin(), ord3.geq.end(), shift) != ord3.geq.end());

  const auto sl4 = build_reductive(ReductiveAlgebra::Type::sl, 4);
  const auto ord4 = tau_order(sl4, cg_triple(4));
  // Six diagonals, the chain on simple roots (3 pairs), one composite shift.
  CHECK(ord4.geq.size() == 10);
  const std::pair<std::pair<int, int>, std::pair<int, int>> comp{{1, 3},
                                                                 {2, 4}};
  CHECK(std::find(ord4.geq.begin(), ord4.geq.end(), comp) != ord4.geq.end());
}

TEST_CASE("the endomorphism has the frozen column images for rank three") {
  const auto g = build_reductive(ReductiveAlgebra::Type::sl, 3);
  const auto sol = solve_f0(g, cg_triple(3));
  const EndoF f = build_f(g, {cg_triple(3), sol.f0});
  REQUIRE(f.matrix.rows() == 8);
  const int s12 = g.root_slot({1, 2});
  const int s13 = g.root_slot({1, 3});
  const int s23 = g.root_slot({2, 3});
  const int s21 = g.root_slot({2, 1});
  const int s31 = g.root_slot({3, 1});
  const int s32 = g.root_slot({3, 2});
  // f(e_{alpha_1}) = -e_{alpha_2}; the composite and e_{alpha_2} map to zero.
  RatVector col = f.matrix.col(s12);
  CHECK(col(s23) == Rat(-1));
  col(s23) = 0;
  CHECK(col.isZero(0));
  CHECK(f.matrix.col(s13).isZero(0));
  CHECK(f.matrix.col(s23).isZero(0));
  // Negative roots accumulate everything below, diagonal included.
  col = f.matrix.col(s21);
  CHECK(col(s21) == Rat(1));
  col(s21) = 0;
  CHECK(col.isZero(0));
  col = f.matrix.col(s32);
  CHECK(col(s32) == Rat(1));
  CHECK(col(s21) == Rat(1));
  col(s32) = 0;
  col(s21) = 0;
  CHECK(col.isZero(0));
  col = f.matrix.col(s31);
  CHECK(col(s31) == Rat(1));
  col(s31) = 0;
  CHECK(col.isZero(0));
  // Cartan block equals f0.
  CHECK(f.matrix.block(6, 6, 2, 2) == sol.f0);
}

TEST_CASE("quadruples violating the Cartan identities are rejected") {
  const auto g = build_reductive(ReductiveAlgebra::Type::sl, 3);
  auto sol = solve_f0(g, cg_triple(3));
  sol.f0(1, 1) += Rat(1, 10);
  CHECK_THROWS_AS(build_f(g, {cg_triple(3), sol.f0}), std::invalid_argument);
}

TEST_CASE("bialgebra identities hold for the empty and shift triples") {
  const auto sl2 = build_reductive(ReductiveAlgebra::Type::sl, 2);
  const auto sol2 = solve_f0(sl2, cg_triple(2));
  CHECK(check_bialgebra(sl2, build_f(sl2, {cg_triple(2), sol2.f0})).all_passed());

  const auto sl3 = build_reductive(ReductiveAlgebra::Type::sl, 3);
  const auto sol3 = solve_f0(sl3, cg_triple(3));
  const auto rep = check_bialgebra(sl3, build_f(sl3, {cg_triple(3), sol3.f0}));
  CHECK(rep.all_passed());
  CHECK(rep.checks.size() == 6);
}

TEST_CASE("perturbing the Cartan block breaks the symmetry identity") {
  const auto g = build_reductive(ReductiveAlgebra::Type::sl, 3);
  const auto sol = solve_f0(g, cg_triple(3));
  EndoF f = build_f(g, {cg_triple(3), sol.f0});
  f.matrix(6, 6) += Rat(1);
  const auto rep = check_bialgebra(g, f);
  CHECK_FALSE(rep.all_passed());
  CHECK(has_failing_entry(rep, "f-plus-f-star"));
}

TEST_CASE("subspace lattice dimensions for the rank-three shift") {
  const auto g = build_reductive(ReductiveAlgebra::Type::sl, 3);
  const auto sol = solve_f0(g, cg_triple(3));
  const EndoF f = build_f(g, {cg_triple(3), sol.f0});
  QuotientData data;
  const auto rep = subalgebra_analysis(g, f, &data);
  CHECK(rep.all_passed());
  CHECK(data.c1.cols() == 6);
  CHECK(data.ker_f.cols() == 2);
  CHECK(data.ker_f_minus_1.cols() == 2);
  CHECK(data.k.cols() == 4);
  CHECK(data.c.cols() == 4);
  CHECK(data.c1_perp.cols() == 2);
  CHECK(data.quotient_dim == 4);
  CHECK(data.reps.rows() == 8);
  CHECK(data.reps.cols() == 4);
  CHECK(data.f_tilde.rows() == 4);
  CHECK(data.gram_tilde.rows() == 4);
  // Rank-nullity for f - 1.
  CHECK(data.c1.cols() + data.ker_f_minus_1.cols() == g.dim);
}

TEST_CASE("factorizable quotient checks pass for small shifts") {
  for (int m = 3; m <= 4; ++m) {
    const auto g = build_reductive(ReductiveAlgebra::Type::sl, m);
    const auto sol = solve_f0(g, cg_triple(m));
    const auto rep = check_flb(g, {cg_triple(m), sol.f0});
    CHECK(rep.all_passed());
    CHECK(has_entry(rep, "flb-quotient-dimension"));
    CHECK(has_entry(rep, "flb-induced-tau"));
  }
}

TEST_CASE("quotient checks reject a broken quadruple") {
  const auto g = build_reductive(ReductiveAlgebra::Type::sl, 3);
  auto sol = solve_f0(g, cg_triple(3));
  sol.f0(0, 0) += Rat(1);
  CHECK_THROWS_AS(check_flb(g, {cg_triple(3), sol.f0}), std::invalid_argument);
}

TEST_CASE("r-matrix and Casimir recombine and solve the classical equation") {
  const auto g = build_reductive(ReductiveAlgebra::Type::sl, 3);
  const auto sol = solve_f0(g, cg_triple(3));
  const EndoF f = build_f(g, {cg_triple(3), sol.f0});
  const RatOperator r = bd_r_matrix(g, f);
  const RatOperator t = casimir_tensor(g);
  const RatOperator flip = RatOperator::flip(3, Rat(1));
  CHECK(r + flip * r * flip == t);
  CHECK(cgkit::cybe_residual(r).is_zero());
}

TEST_CASE("full pipeline for the rank-three shift") {
  const auto rep = cg_pipeline(3);
  CHECK(rep.all_passed());
  CHECK(rep.checks.size() == 29);
  CHECK(has_entry(rep, "f0-unique"));
  CHECK(has_entry(rep, "induced-tau-shift"));
  CHECK(has_entry(rep, "semiclassical-skew-comparison"));
  const auto quiet = cg_pipeline(3, false);
  CHECK(quiet.all_passed());
  CHECK_FALSE(has_entry(quiet, "semiclassical-skew-comparison"));
}
