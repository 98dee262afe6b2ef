#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cgkit/laurent.hpp"
#include "cgkit/rational.hpp"
#include "cgkit/tensor.hpp"

using cgkit::flatten_index;
using cgkit::LaurentPoly;
using cgkit::MultiIndex;
using cgkit::Rat;
using cgkit::unflatten_index;
using RatOp = cgkit::SparseOperator<cgkit::Rat>;
using LaurentOp = cgkit::SparseOperator<cgkit::LaurentPoly>;

namespace {

RatOp random_op(std::mt19937_64& rng, int n, int legs, int entries) {
  RatOp out(n, legs);
  const auto d = out.dim();
  for (int e = 0; e < entries; ++e) {
    const auto row = rng() % d;
    const auto col = rng() % d;
    const long v = static_cast<long>(rng() % 11) - 5;
    out.set_entry_flat(row, col, Rat(v));
  }
  return out;
}

}  // namespace

TEST_CASE("flat and multi indices are inverse to each other") {
  const int n = 3, legs = 3;
  for (std::uint64_t flat = 0; flat < 27; ++flat) {
    const MultiIndex m = unflatten_index(flat, n, legs);
    REQUIRE(static_cast<int>(m.size()) == legs);
    for (int c : m) {
      CHECK(c >= 1);
      CHECK(c <= n);
    }
    CHECK(flatten_index(m, n) == flat);
  }
  CHECK(flatten_index({1, 1}, 3) == 0);
  CHECK(flatten_index({1, 2}, 3) == 1);
  CHECK(flatten_index({2, 1}, 3) == 3);
}

TEST_CASE("identity is neutral for composition") {
  std::mt19937_64 rng(11);
  const RatOp id = RatOp::identity(2, 2, Rat(1));
  for (int trial = 0; trial < 10; ++trial) {
    const RatOp a = random_op(rng, 2, 2, 6);
    CHECK(id * a == a);
    CHECK(a * id == a);
  }
}

TEST_CASE("leg swap is an involution with permutation entries") {
  const RatOp p = RatOp::flip(3, Rat(1));
  CHECK(p * p == RatOp::identity(3, 2, Rat(1)));
  CHECK(p.entry({2, 1}, {1, 2}) == Rat(1));
  CHECK(p.entry({1, 2}, {1, 2}) == Rat(0));
  CHECK(p.nnz() == 9);
}

TEST_CASE("zero values are never stored") {
  RatOp a(2, 2);
  a.set_entry({1, 1}, {2, 2}, Rat(5));
  CHECK(a.nnz() == 1);
  a.set_entry({1, 1}, {2, 2}, Rat(0));
  CHECK(a.nnz() == 0);
  CHECK(a.is_zero());

  RatOp b(2, 2);
  b.add_entry_flat(0, 3, Rat(7));
  b.add_entry_flat(0, 3, Rat(-7));
  CHECK(b.is_zero());
  CHECK(b == RatOp(2, 2));
}

TEST_CASE("embedding into an outer pair of legs matches a Kronecker product") {
  std::mt19937_64 rng(21);
  const RatOp id1 = RatOp::identity(2, 1, Rat(1));
  for (int trial = 0; trial < 10; ++trial) {
    const RatOp r = random_op(rng, 2, 2, 5);
    CHECK(r.embed(1, 2, 3) == kron(r, id1));
    CHECK(r.embed(2, 3, 3) == kron(id1, r));
  }
}

TEST_CASE("embedding across a spectator equals conjugation by a swap") {
  std::mt19937_64 rng(22);
  const RatOp p23 = RatOp::flip(2, Rat(1)).embed(2, 3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const RatOp r = random_op(rng, 2, 2, 5);
    CHECK(r.embed(1, 3, 3) == p23 * r.embed(1, 2, 3) * p23);
  }
}

TEST_CASE("embedding with swapped positions conjugates by the swap") {
  std::mt19937_64 rng(23);
  const RatOp p = RatOp::flip(2, Rat(1));
  for (int trial = 0; trial < 10; ++trial) {
    const RatOp r = random_op(rng, 2, 2, 5);
    CHECK(r.embed(2, 1, 3) == (p * r * p).embed(1, 2, 3));
  }
}

TEST_CASE("composition is associative and distributes over addition") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const RatOp a = random_op(rng, 2, 2, 6);
    const RatOp b = random_op(rng, 2, 2, 6);
    const RatOp c = random_op(rng, 2, 2, 6);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("scalar action commutes with composition") {
  std::mt19937_64 rng(44);
  const Rat three(3);
  for (int trial = 0; trial < 10; ++trial) {
    const RatOp a = random_op(rng, 2, 2, 6);
    const RatOp b = random_op(rng, 2, 2, 6);
    CHECK((three * a) * b == three * (a * b));
  }
}

TEST_CASE("the identity and the swap solve the quantum Yang-Baxter equation") {
  const RatOp id = RatOp::identity(2, 2, Rat(1));
  const RatOp p = RatOp::flip(2, Rat(1));
  CHECK(cgkit::ybe_residual(id).is_zero());
  CHECK(cgkit::ybe_residual(p).is_zero());
  CHECK(cgkit::braid_residual(p).is_zero());
}

TEST_CASE("a non-solution leaves a nonzero residual") {
  RatOp a = RatOp::identity(2, 2, Rat(1));
  a.set_entry({1, 2}, {2, 1}, Rat(1));
  a.set_entry({2, 1}, {1, 2}, Rat(-1));
  CHECK(!cgkit::braid_residual(a).is_zero());
}

TEST_CASE("entrywise mapping turns Laurent operators into rational ones") {
  LaurentOp r(2, 2);
  r.set_entry({1, 1}, {1, 1}, LaurentPoly::q());
  r.set_entry({2, 2}, {2, 2}, LaurentPoly::p());
  const std::vector<Rat> point{Rat(2), Rat(3)};
  const auto evaluated =
      r.map_entries([&](const LaurentPoly& v) { return v.evaluate(point); });
  CHECK(evaluated.entry({1, 1}, {1, 1}) == Rat(2));
  CHECK(evaluated.entry({2, 2}, {2, 2}) == Rat(3));
  CHECK(evaluated.nnz() == 2);
}

TEST_CASE("shape mismatches are rejected") {
  const RatOp a(2, 2);
  const RatOp b(3, 2);
  const RatOp c(2, 3);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(a * c, std::invalid_argument);
  CHECK_THROWS_AS(a.entry({1, 1, 1}, {1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(RatOp(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(a.embed(1, 1, 3), std::invalid_argument);
}
