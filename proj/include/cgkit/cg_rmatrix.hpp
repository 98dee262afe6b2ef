#pragma once

#include "cgkit/laurent.hpp"
#include "cgkit/report.hpp"
#include "cgkit/tensor.hpp"

namespace cgkit {

using LaurentOperator = SparseOperator<LaurentPoly>;
using RatOperator = SparseOperator<Rat>;

struct CGParams {
  int n = 2;
  // Impose q = p^n by substituting q -> p^n, so the matrix lives in p alone.
  bool one_param = false;
};

// Two-parameter Cremmer-Gervais R-matrix on C^n tensor C^n. Entry convention:
// R(e_i tensor e_j) = sum_{k,l} R_ij^kl e_k tensor e_l, i.e. R_ij^kl sits at
// (row (k,l), column (i,j)). The nonzero entries are
//   p * R_ij^kl = q      * p^{2(l-i)}   if i = k >= j = l,
//   p * R_ij^kl = q^-1   * p^{2(l-i)}   if i = k <  j = l,
//   p * R_ij^kl = (q - q^-1)    * p^{2(l-i)}   if j <= k < i and i+j = k+l,
//   p * R_ij^kl = (q^-1 - q)    * p^{2(l-i)}   if i <  k < j and i+j = k+l.
LaurentOperator build_cg(const CGParams& params);

// Yang-Baxter equation R12 R13 R23 = R23 R13 R12 plus the braid relation for
// the Yang-Baxter operator pRP. Failure carries the first offending entry.
Report check_yang_baxter(const LaurentOperator& r);

// Hecke equation (pRP - q)(pRP + q^-1) = 0.
Report check_hecke(const LaurentOperator& r);

// Inverse from the Hecke relation: R^-1 = p^2 PRP - p(q - q^-1)P.
// Throws std::domain_error when R fails the Hecke check, std::logic_error
// when the candidate does not invert R.
LaurentOperator hecke_inverse(const LaurentOperator& r);

// Structural identities of the family R_n:
//  (1) R(q,p)^-1 = R(q^-1,p^-1) entrywise,
//  (2) (R^-1)_ij^kl = R_{j,i+1}^{l,k+1} for i,k < n,
//  (3) R_{n} shifted down one index equals R_{n-1} (and the corner of R_n
//      at indices <= n-1 equals R_{n-1}),
//  (4) homogeneity: nonzero entries have i+j = k+l.
Report check_structure_identities(int n);

// Diagonal twist Q = sum p^{j-i} e_ii tensor e_jj (entry p^{j-i} at (i,j)).
LaurentOperator build_twist_Q(int n);

// Cocycle twist R_sigma = Q R (P Q^-1 P). Q must be invertible diagonal.
LaurentOperator twist(const LaurentOperator& r, const LaurentOperator& q_op);

// Twist identities: P Q^-1 P = Q; twisted R still solves YBE and satisfies
// the conjugation form pRP_sigma = Q (pRP) Q^-1; the two-variable
// specialization p R(q,p) = Q(p) R(q,1) Q(p); and the twist group law
// Q(p) Q(p') = Q(p p') in a three-variable ring.
Report check_twist_identity(int n);

// First-order coefficient r of R = 1 + h*r + O(h^2) along q = exp(u_q h),
// p = exp(u_p h). Requires R(1,1) = identity (std::domain_error otherwise);
// the result is checked against the classical Yang-Baxter equation
// (std::logic_error on failure, which a YBE-passing input cannot trigger).
RatOperator semiclassical_limit(const LaurentOperator& r, const Rat& u_q,
                                const Rat& u_p);

// Report wrapper around semiclassical_limit: identity-at-one and CYBE checks.
Report check_semiclassical(int n, const Rat& u_q, const Rat& u_p,
                           RatOperator* out = nullptr);

}  // namespace cgkit
