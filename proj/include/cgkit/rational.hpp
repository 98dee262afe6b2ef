#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>

namespace cgkit {

using Rat = boost::multiprecision::mpq_rational;

using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

inline bool is_zero(const Rat& x) { return x.is_zero(); }

// Parses "n" or "n/d"; throws std::invalid_argument on malformed input or d == 0.
Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& x);

// x^e with e possibly negative; throws std::domain_error on 0^negative.
Rat rat_pow(const Rat& x, long e);

// Exact linear algebra over the rationals. All pivoting thresholds are zero,
// so ranks, kernels and images are exact, not numerical estimates.
Eigen::Index rank_of(const RatMatrix& a);
RatMatrix kernel_of(const RatMatrix& a);   // columns span the null space
RatMatrix image_of(const RatMatrix& a);    // columns span the column space

// Solves a*x = b exactly; returns false when the system is inconsistent.
bool solve_exact(const RatMatrix& a, const RatMatrix& b, RatMatrix& x);

// True when every column of vecs lies in the column span of basis.
bool span_contains(const RatMatrix& basis, const RatMatrix& vecs);
bool same_span(const RatMatrix& a, const RatMatrix& b);

// Column basis of the intersection of two column spans.
RatMatrix span_intersection(const RatMatrix& a, const RatMatrix& b);

// Concatenates columns [a | b].
RatMatrix hcat(const RatMatrix& a, const RatMatrix& b);

}  // namespace cgkit
