// End-to-end acceptance run: every guaranteed property of the library in one
// binary, one verdict line per criterion. All arithmetic is exact unless a
// criterion explicitly calls for random modular specialization.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cgkit/bd.hpp"
#include "cgkit/modular.hpp"
#include "cgkit/quantum.hpp"

#include <cstdio>
#include <string>

using namespace cgkit;

namespace {

constexpr std::uint64_t kPrime = fp::default_prime;  // 2^61 - 1
constexpr std::uint64_t kSeed = 20240817;

void verdict(int id, bool ok, const std::string& label, double ms) {
  std::printf("[criterion %02d] %s -- %s (%.0f ms)\n", id, ok ? "PASS" : "FAIL",
              label.c_str(), ms);
  std::fflush(stdout);
}

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long out = 1;
  for (long i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace

TEST_CASE("criterion 01") {
  Stopwatch watch;
  bool ok = true;
  double largest_ms = 0.0;
  for (int n = 2; n <= 5; ++n) {
    Stopwatch one;
    ok = check_yang_baxter(build_cg({n, false})).all_passed() && ok;
    if (n == 5) largest_ms = one.ms();
  }
  ok = ok && largest_ms < 60'000.0;
  verdict(1, ok, "Yang-Baxter and braid relations, exact, n = 2..5", watch.ms());
  CHECK(ok);
}

TEST_CASE("criterion 02") {
  Stopwatch watch;
  bool ok = true;
  for (int n = 2; n <= 5; ++n)
    ok = check_hecke(build_cg({n, false})).all_passed() && ok;
  verdict(2, ok, "Hecke quadratic relation, exact, n = 2..5", watch.ms());
  CHECK(ok);
}

TEST_CASE("criterion 03") {
  Stopwatch watch;
  bool ok = true;
  for (int n = 2; n <= 5; ++n)
    ok = check_structure_identities(n).all_passed() && ok;
  verdict(3, ok,
          "inverse substitution, index shift, corner and homogeneity "
          "identities, n = 2..5",
          watch.ms());
  CHECK(ok);
}

TEST_CASE("criterion 04") {
  Stopwatch watch;
  bool ok = true;
  for (int n = 2; n <= 4; ++n) ok = check_twist_identity(n).all_passed() && ok;
  verdict(4, ok, "diagonal twist suite, n = 2..4", watch.ms());
  CHECK(ok);
}

TEST_CASE("criterion 05") {
  Stopwatch watch;
  const int trials = 3;
  bool ok = true;
  auto dim_matches = [&](const QuadraticPresentation& pres, int d,
                         long expect) {
    const auto gd = graded_dimension(pres, d, kPrime, kSeed + d, trials);
    return gd.dimension == expect && gd.unanimous;
  };
  for (int n = 2; n <= 4; ++n) {
    const auto r = build_cg({n, false});
    const auto lam = exterior_relations(r);
    for (int d = 1; d <= n; ++d) ok = dim_matches(lam, d, binom(n, d)) && ok;
    const auto sym = symmetric_relations(r);
    for (int d = 1; d <= 4; ++d)
      ok = dim_matches(sym, d, binom(n + d - 1, d)) && ok;
  }
  for (int n = 2; n <= 3; ++n) {
    const auto alg = frt_relations(build_cg({n, false}));
    for (int d = 1; d <= 3; ++d)
      ok = dim_matches(alg, d, binom(n * n + d - 1, d)) && ok;
  }
  verdict(5, ok,
          "graded dimensions of the exterior, symmetric and bialgebra "
          "algebras match the classical ones (3 modular trials, unanimous)",
          watch.ms());
  CHECK(ok);
}

TEST_CASE("criterion 06") {
  Stopwatch watch;
  bool ok = true;
  for (int n = 2; n <= 4; ++n) ok = check_det_pairings(n).all_passed() && ok;
  verdict(6, ok,
          "quantum determinant pairings in both orientations, n = 2..4",
          watch.ms());
  CHECK(ok);
}

TEST_CASE("criterion 07") {
  Stopwatch watch;
  bool ok = check_det_normality(2, kPrime, kSeed, 3).all_passed();
  ok = check_det_normality(3, kPrime, kSeed, 3).all_passed() && ok;
  verdict(7, ok,
          "quantum determinant is normal in the relation ideal (exact for "
          "n = 2, 3 modular trials for n = 3)",
          watch.ms());
  CHECK(ok);
}

TEST_CASE("criterion 08") {
  Stopwatch watch;
  bool ok = true;
  for (int n = 2; n <= 5; ++n) ok = l_functionals(n).all_passed() && ok;
  verdict(8, ok,
          "generator functionals: triangular vanishing, index shift and "
          "restricted pairing, n = 2..5",
          watch.ms());
  CHECK(ok);
}

TEST_CASE("criterion 09") {
  Stopwatch watch;
  bool ok = psi_phi_check(2, 3).all_passed();
  ok = psi_phi_check(3, 3).all_passed() && ok;
  verdict(9, ok,
          "corner-generator annihilation and determinant-functional "
          "agreement on words up to degree 3, n = 2, 3",
          watch.ms());
  CHECK(ok);
}

TEST_CASE("criterion 10") {
  Stopwatch watch;
  bool ok = true;
  double last_ms = 0.0;
  for (int m = 3; m <= 5; ++m) {
    Stopwatch one;
    ok = cg_pipeline(m).all_passed() && ok;
    if (m == 5) last_ms = one.ms();
  }
  ok = ok && last_ms < 120'000.0;
  verdict(10, ok,
          "classical factorizable pipeline for the shift triple on sl(m), "
          "m = 3..5",
          watch.ms());
  CHECK(ok);
}

TEST_CASE("criterion 11") {
  Stopwatch watch;
  bool ok = check_semiclassical(2, Rat(2), Rat(1)).all_passed();
  ok = check_semiclassical(3, Rat(3), Rat(1)).all_passed() && ok;
  // The comparison with the classically built r-matrix stays informational.
  bool has_info = false;
  for (const auto& c : cg_pipeline(3).checks)
    if (c.name == "semiclassical-skew-comparison" &&
        c.status == CheckEntry::Status::info)
      has_info = true;
  ok = ok && has_info;
  verdict(11, ok,
          "first-order limits solve the classical Yang-Baxter equation "
          "(n = 2, 3); skew comparison reported as info",
          watch.ms());
  CHECK(ok);
}

TEST_CASE("criterion 12") {
  Stopwatch watch;
  // Each control must FAIL its check; the criterion passes when all do.
  LaurentOperator corrupted = build_cg({3, false});
  corrupted.set_entry({2, 2}, {3, 1}, LaurentPoly::zero());
  const auto ybe_rep = check_yang_baxter(corrupted);
  bool corrupted_fails = !ybe_rep.all_passed();
  bool witnessed = false;
  for (const auto& c : ybe_rep.checks)
    if (c.status == CheckEntry::Status::fail && c.witness_location) witnessed = true;
  corrupted_fails = corrupted_fails && witnessed;

  const bool identity_fails =
      !check_hecke(LaurentOperator::identity(2, 2, LaurentPoly::one()))
           .all_passed();

  const auto g = build_reductive(ReductiveAlgebra::Type::sl, 3);
  AdmissibleTriple cyc;
  cyc.b1 = {1};
  cyc.b2 = {1};
  cyc.tau = {{1, 1}};
  const bool cyclic_fails = !validate_triple(g, cyc).all_passed();

  const auto sol = solve_f0(g, cg_triple(3));
  EndoF broken = build_f(g, {cg_triple(3), sol.f0});
  broken.matrix(6, 6) += Rat(1);
  bool skew_fails = false;
  for (const auto& c : check_bialgebra(g, broken).checks)
    if (c.name == "f-plus-f-star" && c.status == CheckEntry::Status::fail)
      skew_fails = true;

  const bool ok = corrupted_fails && identity_fails && cyclic_fails && skew_fails;
  verdict(12, ok,
          "negative controls all fail as designed (corrupted operator, "
          "identity operator, cyclic tau, broken skew part)",
          watch.ms());
  CHECK(ok);
}
