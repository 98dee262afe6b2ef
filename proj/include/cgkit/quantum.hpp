#pragma once

#include "cgkit/cg_rmatrix.hpp"
#include "cgkit/ncpoly.hpp"
#include "cgkit/report.hpp"

#include <cstdint>
#include <vector>

namespace cgkit {

// Quadratic presentations attached to an R-matrix acting on (C^n)^{x2}.
//
// frt_relations: bialgebra relations on the n^2 generators T_i^k.  For each
// index quadruple (i,j,k,l) the relation element is
//     sum_{u,v} R_{ji}^{uv} T_u^k T_v^l  -  sum_{u,v} T_i^u T_j^v R_{vu}^{kl}.
// All n^4 elements are kept (many coincide or vanish); each one is
// bihomogeneous for the (row-sum, column-sum) grading of T-words.
//
// symmetric_relations: quantum symmetric algebra on x_1..x_n with elements
//     q x_j x_i - p sum_{k,l} R_{ij}^{kl} x_k x_l.
//
// exterior_relations: quantum exterior algebra on x_1..x_n with elements
//     q^{-1} x_j x_i + p sum_{k,l} R_{ij}^{kl} x_k x_l.
QuadraticPresentation frt_relations(const LaurentOperator& r);
QuadraticPresentation symmetric_relations(const LaurentOperator& r);
QuadraticPresentation exterior_relations(const LaurentOperator& r);

// Normal form of the exterior-algebra monomial x_{w_1} ... x_{w_r} for the
// rank-n Cremmer-Gervais matrix: repeated letters kill the word and each
// descending adjacent pair rewrites as
//     x_j x_i  ->  -p^{2(j-i)} x_i x_j   (j > i),
// which is the two-term relation generated by exterior_relations(build_cg).
// Returns a scalar multiple of the strictly increasing word (or zero).
// Letters are 1-based.
NCPolynomial lambda_normal_form(const std::vector<int>& word, int n);

// Coefficient a_sigma with x_{sigma(1)} ... x_{sigma(n)} = a_sigma x_1 ... x_n
// in the exterior algebra.  sigma is a permutation of 1..n given in one-line
// notation.  a_sigma specializes to sign(sigma) at p = 1.
LaurentPoly a_sigma(const std::vector<int>& sigma);

// Quantum determinant sum_sigma a_sigma T_1^{sigma(1)} ... T_n^{sigma(n)}
// in the free algebra on the T_i^k.
NCPolynomial quantum_determinant(int n);

// Cobraiding form on the free T-algebra determined by
//     <T_a^b | T_c^d> = R^{db}_{ca},
// extended to words by the dual-pairing axioms (counit on empty words,
// multiplicativity in each slot against the coproduct of the other).
// Both arguments must live on the same rank-n T alphabet.
LaurentPoly braiding_pair(const NCPolynomial& a, const NCPolynomial& b,
                          const LaurentOperator& r);

// Dimension of degree-d component of the quadratic algebra, computed as
// (alphabet size)^d minus the rank of the padded relation span.  The rank is
// evaluated at `trials` random specializations of (q, p) modulo `modulus`
// (block by block in the bigrading); the reported dimension is the minimum
// over trials and `unanimous` records whether all trials agreed.
struct GradedDimension {
  long dimension = 0;
  bool unanimous = true;
  std::vector<long> per_trial;
};
GradedDimension graded_dimension(const QuadraticPresentation& pres, int degree,
                                 std::uint64_t modulus, std::uint64_t seed,
                                 int trials);

// Membership of a homogeneous element in the two-sided ideal generated by the
// presentation's relations, decided degree by degree.
//
// exact mode: fraction-free Gaussian elimination over the Laurent ring,
// one bigraded block at a time.  specialized mode: rank computation modulo
// `modulus` at `trials` random (q, p) points with per-trial seeds derived
// from `seed`; returns the conjunction of the trials.
struct MembershipMode {
  enum class Kind { exact, specialized };
  Kind kind = Kind::exact;
  std::uint64_t modulus = 0;
  std::uint64_t seed = 0;
  int trials = 0;
  static MembershipMode exact();
  static MembershipMode specialized(std::uint64_t modulus, std::uint64_t seed,
                                    int trials);
};
bool ideal_membership(const NCPolynomial& elem,
                      const QuadraticPresentation& pres,
                      const MembershipMode& mode, int degree_bound = 4);

// Pairings of the quantum determinant against generators:
//     <det_q | T_i^k> = (q^{-1} p^n)^{n-2i} delta_{ik}
//     <T_i^k | det_q> = (q^{-1} p^n)^{-(n-2i+2)} delta_{ik}
// with product cross-checks prod_j R^{ij}_{ij} and prod_j R^{ji}_{ji}, and a
// unit check (each nonzero value is a Laurent monomial).
Report check_det_pairings(int n);

// Normality of det_q in the FRT algebra:
//     T_i^k det_q - (q^{-1} p^n)^{2(i-k)} det_q T_i^k
// lies in the relation ideal for all i, k.  Exact elimination for n = 2,
// random specializations for n = 3.
Report check_det_normality(int n, std::uint64_t modulus, std::uint64_t seed,
                           int trials);

// Pairings plus normality.
Report check_det_properties(int n, std::uint64_t modulus, std::uint64_t seed);

// Matrix of a generator functional on the T generators and on their antipode
// images.  on_t[(j-1)*n + (l-1)] is the value at T_j^l; on_st likewise at
// S(T_j^l).  For l_plus = true (functional l^+(T_i^k)):
//     on_t = R^{lk}_{ja},   on_st = (R^{-1})^{lk}_{ja}  evaluated at a = i;
// for l_minus (l_plus = false, functional l^-(T_i^k)):
//     on_t = (R^{-1})_{ij}^{kl},   on_st = R_{ij}^{kl}.
struct FunctionalMatrix {
  bool l_plus = true;
  int i = 1;
  int k = 1;
  std::vector<LaurentPoly> on_t;
  std::vector<LaurentPoly> on_st;
};

// Triangularity and shift identities of the generator functionals:
//   * l^+(T_i^1) = 0 for i > 1 (both matrices),
//   * l^-(T_i^n) = 0 for i < n,
//   * l^-(T_i^k) = l^+(T_{i+1}^{k+1}) for i, k in [n-1],
//   * restricted pairing (t_i^k | t_j^l) = (R^{-1})^{l,k+1}_{j,i+1}
//     equals R_{ij}^{kl} for indices in [n-1].
// When `out` is non-null it receives all 2 n^2 functional matrices.
Report l_functionals(int n, std::vector<FunctionalMatrix>* out = nullptr);

// Evidence for the quotient maps between the rank-n and rank-(n-1) theories:
//   (a) the principal-corner entries of R_{n-1} agree with those of R_n and
//       with the shifted entries of R_n^{-1},
//   (b) the two expressions for the distinguished invertible functional
//         d+ = sum_{sigma(1)=1} a_sigma l^+(T_n^{sigma(n)}) ... l^+(T_2^{sigma(2)})
//         d- = sum_{sigma(n)=n} a_sigma l^-(T_{n-1}^{sigma(n-1)}) ... l^-(T_1^{sigma(1)})
//       agree on every T-word of degree 0..max_degree,
//   (c) products of the restricted-functional action matrices keep the
//       (1, n) and (n, 1) entries of the T matrix at zero, so the corner
//       generators die in the rank-(n-1) image (checked to degree 3).
Report psi_phi_check(int n, int max_degree);

}  // namespace cgkit
