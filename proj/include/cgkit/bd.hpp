#pragma once

#include "cgkit/cg_rmatrix.hpp"
#include "cgkit/rational.hpp"
#include "cgkit/report.hpp"
#include "cgkit/tensor.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace cgkit {

// Reductive Lie algebra of type A realized by m x m rational matrices, with
// the trace form kappa(x, y) = tr(xy).
//
// Basis layout: root vectors for the positive roots (a, b), a < b, in lex
// order (e_(a,b) = E_ab), then the corresponding negatives in matching order
// (E_ba), then the Cartan part: h_i = E_ii - E_{i+1,i+1} for sl, the diagonal
// units E_ii for gl. With this normalization kappa(e_alpha, e_beta) =
// delta_{alpha,-beta} and [e_alpha, e_{-alpha}] = h_alpha.
struct ReductiveAlgebra {
  enum class Type { gl, sl };

  Type type = Type::sl;
  int m = 0;
  int dim = 0;
  int cartan_dim = 0;
  int num_positive = 0;
  std::vector<std::pair<int, int>> positive;  // (a, b) with a < b, lex order
  std::vector<RatMatrix> basis;               // size dim, each m x m
  RatMatrix gram;                             // kappa on the basis
  RatMatrix gram_inv;
  RatMatrix cartan_gram;                      // kappa on the Cartan block
  RatMatrix cartan_gram_inv;

  int simple_count() const { return m - 1; }

  RatMatrix root_vector(std::pair<int, int> root) const;  // E_ab (either sign)
  RatMatrix coroot(std::pair<int, int> root) const;       // E_aa - E_bb
  RatMatrix simple_coroot(int i) const;                    // h_{alpha_i}

  // Basis slot of the root vector for `root` (positive or negative pair).
  int root_slot(std::pair<int, int> root) const;
  std::string basis_label(int slot) const;

  Rat kappa(const RatMatrix& x, const RatMatrix& y) const;
  static RatMatrix bracket(const RatMatrix& x, const RatMatrix& y);

  // Coordinates in the basis; throws std::invalid_argument when the matrix
  // does not lie in the algebra (e.g. nonzero trace for sl).
  RatVector coords(const RatMatrix& x) const;
  RatMatrix from_coords(const RatVector& v) const;

  // Same for elements of the Cartan subalgebra in the Cartan basis.
  RatVector cartan_coords(const RatMatrix& h) const;
  RatMatrix cartan_from_coords(const RatVector& v) const;

  // kappa-dual basis a^mu with kappa(a_mu, a^nu) = delta.
  std::vector<RatMatrix> dual_basis() const;
};

ReductiveAlgebra build_reductive(ReductiveAlgebra::Type type, int m);

// Simple-root data (B1, B2, tau) with 1-based simple root indices.
struct AdmissibleTriple {
  std::vector<int> b1;
  std::vector<int> b2;
  std::map<int, int> tau;
};

// B1 = {alpha_1..alpha_{m-2}}, B2 = {alpha_2..alpha_{m-1}}, tau(i) = i + 1.
// Empty for m = 2.
AdmissibleTriple cg_triple(int m);

// Checks that tau preserves the Cartan pairing on the chosen simple coroots
// and that every tau-orbit leaves B1 after finitely many steps. Malformed
// data (indices out of range, tau not a bijection B1 -> B2) throws
// std::invalid_argument.
Report validate_triple(const ReductiveAlgebra& g, const AdmissibleTriple& t);

// Solution of the Cartan constraints: f0 = 1/2 + s with s kappa-skew and
// f0(h_alpha) = (f0 - 1)(h_{tau(alpha)}) for alpha in B1. `freedom` is the
// dimension of the homogeneous solution space; `consistent` records whether
// the inhomogeneous system is solvable at all.
struct F0Solution {
  RatMatrix f0;
  int freedom = 0;
  bool consistent = true;
};
F0Solution solve_f0(const ReductiveAlgebra& g, const AdmissibleTriple& t);

// tau extended to positive roots: a root moves when its support lies in B1
// and the image of its simple-root expansion is again a root. `geq` lists
// every pair (alpha, beta) with beta = tau^j(alpha) for some j >= 0.
struct TauOrder {
  std::vector<std::pair<int, int>> positive;
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> geq;
};
TauOrder tau_order(const ReductiveAlgebra& g, const AdmissibleTriple& t);

struct BDQuadruple {
  AdmissibleTriple triple;
  RatMatrix f0;  // cartan_dim x cartan_dim, columns = images of Cartan basis
};

// Endomorphism of g in basis coordinates (columns = images of basis vectors).
struct EndoF {
  RatMatrix matrix;
};

// f(e_alpha) = -sum_{beta > alpha} e_beta, f(e_{-alpha}) = sum_{beta <= alpha}
// e_{-beta}, f|_h = f0. Throws std::invalid_argument when the quadruple
// invariants fail.
EndoF build_f(const ReductiveAlgebra& g, const BDQuadruple& quad);

// r = sum_mu a_mu (x) f(a^mu) realized on C^m (x) C^m.
RatOperator bd_r_matrix(const ReductiveAlgebra& g, const EndoF& f);
// t = sum_mu a_mu (x) a^mu (flip for gl, flip minus (1/m) id (x) id for sl).
RatOperator casimir_tensor(const ReductiveAlgebra& g);

// Exact verification on the full basis: f + f* = 1; the modified cocycle
// identity on all pairs; the Jacobi identity for the dual bracket
// [x,y]_f = [x,fy] + [fx,y] - [x,y] on all triples; the classical
// Yang-Baxter equation for r; r + r_flip = t; and g-invariance of t.
Report check_bialgebra(const ReductiveAlgebra& g, const EndoF& f);

// Subspace data attached to f: c1 = Im(f-1), its perp (= Ker f), Ker(f-1),
// k = Ker f + Ker(f-1), c = f(c1), and the quotient c1 / c1-perp with its
// induced form and induced operator. All matrices are column bases in g
// coordinates; quotient objects are in the `reps` coordinates.
struct QuotientData {
  RatMatrix c1;
  RatMatrix ker_f;
  RatMatrix ker_f_minus_1;
  RatMatrix k;
  RatMatrix c;
  RatMatrix c1_perp;
  int quotient_dim = 0;
  RatMatrix reps;        // dim x quotient_dim
  RatMatrix f_tilde;     // quotient_dim x quotient_dim
  RatMatrix gram_tilde;  // induced form on the reps
};

Report subalgebra_analysis(const ReductiveAlgebra& g, const EndoF& f,
                           QuotientData* out = nullptr);

// Structural claims about the factorizable quotient: its dimension matches
// the root-space count plus the rank of the form on the complementary Cartan
// piece, the quotient Cartan has the predicted dimension, and the induced
// triple tau-tilde = tau restricted to tau^{-1}(B1 cap B2) is reported.
// Throws std::invalid_argument when check_bialgebra or subalgebra_analysis
// fails for the quadruple.
Report check_flb(const ReductiveAlgebra& g, const BDQuadruple& quad);

// End-to-end run for sl(m) with the shift triple: solve f0 (must be unique),
// build f, run every check, verify the induced tau is the shortened shift
// chain, and optionally compare the skew part of the first-order limit of the
// rank-m R-matrix against the skew part of r (informational).
Report cg_pipeline(int m, bool with_semiclassical = true);

}  // namespace cgkit
