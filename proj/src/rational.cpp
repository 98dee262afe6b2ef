#include "cgkit/rational.hpp"

#include <stdexcept>

namespace cgkit {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  try {
    Rat r(s);
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
}

std::string rat_to_string(const Rat& x) { return x.str(); }

Rat rat_pow(const Rat& x, long e) {
  if (e == 0) return Rat(1);
  Rat base = x;
  if (e < 0) {
    if (is_zero(x)) throw std::domain_error("zero raised to a negative power");
    base = Rat(1) / x;
    e = -e;
  }
  Rat acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

namespace {

Eigen::FullPivLU<RatMatrix> exact_lu(const RatMatrix& a) {
  Eigen::FullPivLU<RatMatrix> lu(a);
  lu.setThreshold(Rat(0));
  return lu;
}

}  // namespace

Eigen::Index rank_of(const RatMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  return exact_lu(a).rank();
}

RatMatrix kernel_of(const RatMatrix& a) {
  if (a.cols() == 0) return RatMatrix(0, 0);
  if (a.rows() == 0) return RatMatrix::Identity(a.cols(), a.cols());
  auto lu = exact_lu(a);
  if (lu.rank() == a.cols()) return RatMatrix(a.cols(), 0);
  RatMatrix k = lu.kernel();
  return k;
}

RatMatrix image_of(const RatMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return RatMatrix(a.rows(), 0);
  auto lu = exact_lu(a);
  if (lu.rank() == 0) return RatMatrix(a.rows(), 0);
  RatMatrix im = lu.image(a);
  return im;
}

bool solve_exact(const RatMatrix& a, const RatMatrix& b, RatMatrix& x) {
  auto lu = exact_lu(a);
  x = lu.solve(b);
  RatMatrix residual = a * x - b;
  for (Eigen::Index j = 0; j < residual.cols(); ++j)
    for (Eigen::Index i = 0; i < residual.rows(); ++i)
      if (!is_zero(residual(i, j))) return false;
  return true;
}

bool span_contains(const RatMatrix& basis, const RatMatrix& vecs) {
  if (vecs.cols() == 0) return true;
  Eigen::Index r = rank_of(basis);
  return rank_of(hcat(basis, vecs)) == r;
}

bool same_span(const RatMatrix& a, const RatMatrix& b) {
  return span_contains(a, b) && span_contains(b, a);
}

RatMatrix span_intersection(const RatMatrix& a, const RatMatrix& b) {
  // Null space of [a | -b] gives coefficient pairs; a-part of each pair
  // evaluates to a vector in both spans.
  if (a.cols() == 0 || b.cols() == 0) return RatMatrix(a.rows(), 0);
  RatMatrix stacked(a.rows(), a.cols() + b.cols());
  stacked << a, -b;
  RatMatrix null_basis = kernel_of(stacked);
  if (null_basis.cols() == 0) return RatMatrix(a.rows(), 0);
  RatMatrix candidates = a * null_basis.topRows(a.cols());
  return image_of(candidates);
}

RatMatrix hcat(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  RatMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

}  // namespace cgkit
