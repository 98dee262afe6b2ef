#include "cgkit/bd.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cgkit {
namespace {

RatMatrix rat_identity(int n) {
  RatMatrix i = RatMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a) i(a, a) = Rat(1);
  return i;
}

bool matrix_is_zero(const RatMatrix& a) {
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      if (!is_zero(a(r, c))) return false;
  return true;
}

bool matrices_equal(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return matrix_is_zero(a - b);
}

// Orthogonal complement of the column span wrt the algebra's form.
RatMatrix perp_of(const ReductiveAlgebra& g, const RatMatrix& basis) {
  if (basis.cols() == 0) return rat_identity(g.dim);
  RatMatrix constraints = basis.transpose() * g.gram;
  return kernel_of(constraints);
}

RatOperator op_of_matrix(const RatMatrix& x) {
  const int m = static_cast<int>(x.rows());
  RatOperator out(m, 1);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (!is_zero(x(a, b)))
        out.set_entry({a + 1}, {b + 1}, x(a, b));
  return out;
}

// x (x) y as a two-leg operator on C^m (x) C^m.
RatOperator pair_tensor(const RatMatrix& x, const RatMatrix& y) {
  return kron(op_of_matrix(x), op_of_matrix(y));
}

std::string root_label(std::pair<int, int> root) {
  std::ostringstream os;
  os << "E(" << root.first << "," << root.second << ")";
  return os.str();
}

// Support of a positive root (a, b): simple indices a .. b-1.
std::vector<int> root_support(std::pair<int, int> root) {
  std::vector<int> s;
  for (int i = root.first; i < root.second; ++i) s.push_back(i);
  return s;
}

bool support_inside(const std::vector<int>& support, const std::vector<int>& set) {
  for (int i : support)
    if (std::find(set.begin(), set.end(), i) == set.end()) return false;
  return true;
}

// tau applied to a positive root, following the simple-root expansion; the
// image must again be a consecutive run (i.e. a root of type A).
std::optional<std::pair<int, int>> tau_image(const AdmissibleTriple& t,
                                             std::pair<int, int> root) {
  const auto support = root_support(root);
  if (!support_inside(support, t.b1)) return std::nullopt;
  std::vector<int> image;
  image.reserve(support.size());
  for (int i : support) image.push_back(t.tau.at(i));
  std::sort(image.begin(), image.end());
  if (image.back() - image.front() + 1 != static_cast<int>(image.size()))
    return std::nullopt;  // not a consecutive run, so not a root
  return std::pair<int, int>{image.front(), image.back() + 1};
}

void require_valid_shape(const ReductiveAlgebra& g, const AdmissibleTriple& t) {
  const int s = g.simple_count();
  auto check_subset = [&](const std::vector<int>& set, const char* name) {
    std::set<int> seen;
    for (int i : set) {
      if (i < 1 || i > s)
        throw std::invalid_argument(std::string("triple: ") + name +
                                    " contains an index outside the simple roots");
      if (!seen.insert(i).second)
        throw std::invalid_argument(std::string("triple: ") + name +
                                    " contains a repeated index");
    }
  };
  check_subset(t.b1, "B1");
  check_subset(t.b2, "B2");
  if (t.b1.size() != t.b2.size() || t.tau.size() != t.b1.size())
    throw std::invalid_argument("triple: tau must be a bijection B1 -> B2");
  std::set<int> image;
  for (int a : t.b1) {
    auto it = t.tau.find(a);
    if (it == t.tau.end())
      throw std::invalid_argument("triple: tau is undefined on part of B1");
    if (std::find(t.b2.begin(), t.b2.end(), it->second) == t.b2.end())
      throw std::invalid_argument("triple: tau image leaves B2");
    if (!image.insert(it->second).second)
      throw std::invalid_argument("triple: tau is not injective");
  }
}

// f applied through coordinates.
RatMatrix apply_endo(const ReductiveAlgebra& g, const RatMatrix& f,
                     const RatMatrix& x) {
  return g.from_coords(f * g.coords(x));
}

// Dual bracket [x,y]_f = [x, fy] + [fx, y] - [x, y].
RatMatrix dual_bracket(const ReductiveAlgebra& g, const RatMatrix& f,
                       const RatMatrix& x, const RatMatrix& y) {
  const RatMatrix fx = apply_endo(g, f, x);
  const RatMatrix fy = apply_endo(g, f, y);
  return ReductiveAlgebra::bracket(x, fy) + ReductiveAlgebra::bracket(fx, y) -
         ReductiveAlgebra::bracket(x, y);
}

}  // namespace

// ---------------------------------------------------------------------------
// Algebra construction.

RatMatrix ReductiveAlgebra::root_vector(std::pair<int, int> root) const {
  RatMatrix e = RatMatrix::Zero(m, m);
  e(root.first - 1, root.second - 1) = Rat(1);
  return e;
}

RatMatrix ReductiveAlgebra::coroot(std::pair<int, int> root) const {
  RatMatrix h = RatMatrix::Zero(m, m);
  h(root.first - 1, root.first - 1) = Rat(1);
  h(root.second - 1, root.second - 1) = Rat(-1);
  return h;
}

RatMatrix ReductiveAlgebra::simple_coroot(int i) const {
  if (i < 1 || i > simple_count())
    throw std::invalid_argument("simple_coroot: index out of range");
  return coroot({i, i + 1});
}

int ReductiveAlgebra::root_slot(std::pair<int, int> root) const {
  const bool positive_root = root.first < root.second;
  const std::pair<int, int> key =
      positive_root ? root : std::pair<int, int>{root.second, root.first};
  for (int r = 0; r < num_positive; ++r)
    if (positive[r] == key) return positive_root ? r : num_positive + r;
  throw std::invalid_argument("root_slot: not a root");
}

std::string ReductiveAlgebra::basis_label(int slot) const {
  if (slot < num_positive) return root_label(positive[slot]);
  if (slot < 2 * num_positive) {
    auto [a, b] = positive[slot - num_positive];
    return root_label({b, a});
  }
  return "h(" + std::to_string(slot - 2 * num_positive + 1) + ")";
}

Rat ReductiveAlgebra::kappa(const RatMatrix& x, const RatMatrix& y) const {
  return (x * y).trace();
}

RatMatrix ReductiveAlgebra::bracket(const RatMatrix& x, const RatMatrix& y) {
  return x * y - y * x;
}

RatVector ReductiveAlgebra::coords(const RatMatrix& x) const {
  RatVector pairings(dim);
  for (int mu = 0; mu < dim; ++mu) pairings(mu) = kappa(basis[mu], x);
  RatVector v = gram_inv * pairings;
  if (!matrices_equal(from_coords(v), x))
    throw std::invalid_argument("coords: matrix is not in the algebra");
  return v;
}

RatMatrix ReductiveAlgebra::from_coords(const RatVector& v) const {
  if (v.size() != dim) throw std::invalid_argument("from_coords: wrong length");
  RatMatrix x = RatMatrix::Zero(m, m);
  for (int mu = 0; mu < dim; ++mu)
    if (!is_zero(v(mu))) x += v(mu) * basis[mu];
  return x;
}

RatVector ReductiveAlgebra::cartan_coords(const RatMatrix& h) const {
  RatVector pairings(cartan_dim);
  for (int i = 0; i < cartan_dim; ++i)
    pairings(i) = kappa(basis[2 * num_positive + i], h);
  RatVector v = cartan_gram_inv * pairings;
  if (!matrices_equal(cartan_from_coords(v), h))
    throw std::invalid_argument("cartan_coords: matrix is not in the Cartan part");
  return v;
}

RatMatrix ReductiveAlgebra::cartan_from_coords(const RatVector& v) const {
  if (v.size() != cartan_dim)
    throw std::invalid_argument("cartan_from_coords: wrong length");
  RatMatrix x = RatMatrix::Zero(m, m);
  for (int i = 0; i < cartan_dim; ++i)
    if (!is_zero(v(i))) x += v(i) * basis[2 * num_positive + i];
  return x;
}

std::vector<RatMatrix> ReductiveAlgebra::dual_basis() const {
  std::vector<RatMatrix> duals;
  duals.reserve(dim);
  for (int mu = 0; mu < dim; ++mu) {
    RatMatrix d = RatMatrix::Zero(m, m);
    for (int nu = 0; nu < dim; ++nu)
      if (!is_zero(gram_inv(nu, mu))) d += gram_inv(nu, mu) * basis[nu];
    duals.push_back(std::move(d));
  }
  return duals;
}

ReductiveAlgebra build_reductive(ReductiveAlgebra::Type type, int m) {
  if (m < 2) throw std::invalid_argument("build_reductive: m must be at least 2");
  ReductiveAlgebra g;
  g.type = type;
  g.m = m;
  g.cartan_dim = type == ReductiveAlgebra::Type::gl ? m : m - 1;
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b) g.positive.push_back({a, b});
  g.num_positive = static_cast<int>(g.positive.size());
  for (const auto& root : g.positive) g.basis.push_back(g.root_vector(root));
  for (const auto& root : g.positive)
    g.basis.push_back(g.root_vector({root.second, root.first}));
  if (type == ReductiveAlgebra::Type::gl) {
    for (int i = 1; i <= m; ++i) {
      RatMatrix h = RatMatrix::Zero(m, m);
      h(i - 1, i - 1) = Rat(1);
      g.basis.push_back(std::move(h));
    }
  } else {
    for (int i = 1; i <= m - 1; ++i) g.basis.push_back(g.simple_coroot(i));
  }
  g.dim = static_cast<int>(g.basis.size());

  g.gram = RatMatrix::Zero(g.dim, g.dim);
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) g.gram(i, j) = g.kappa(g.basis[i], g.basis[j]);
  Eigen::FullPivLU<RatMatrix> lu(g.gram);
  lu.setThreshold(Rat(0));
  if (!lu.isInvertible())
    throw std::logic_error("build_reductive: degenerate trace form");
  g.gram_inv = lu.inverse();

  g.cartan_gram = g.gram.block(2 * g.num_positive, 2 * g.num_positive,
                               g.cartan_dim, g.cartan_dim);
  Eigen::FullPivLU<RatMatrix> clu(g.cartan_gram);
  clu.setThreshold(Rat(0));
  if (!clu.isInvertible())
    throw std::logic_error("build_reductive: degenerate Cartan form");
  g.cartan_gram_inv = clu.inverse();

  for (const auto& root : g.positive) {
    const RatMatrix e = g.root_vector(root);
    const RatMatrix f = g.root_vector({root.second, root.first});
    if (!matrices_equal(ReductiveAlgebra::bracket(e, f), g.coroot(root)))
      throw std::logic_error("build_reductive: coroot identity failed");
    if (g.kappa(e, f) != Rat(1))
      throw std::logic_error("build_reductive: root-vector normalization failed");
  }
  return g;
}

// ---------------------------------------------------------------------------
// Triples.

AdmissibleTriple cg_triple(int m) {
  if (m < 2) throw std::invalid_argument("cg_triple: m must be at least 2");
  AdmissibleTriple t;
  for (int i = 1; i <= m - 2; ++i) {
    t.b1.push_back(i);
    t.b2.push_back(i + 1);
    t.tau[i] = i + 1;
  }
  return t;
}

Report validate_triple(const ReductiveAlgebra& g, const AdmissibleTriple& t) {
  require_valid_shape(g, t);
  Report rep;
  {
    Stopwatch sw;
    bool ok = true;
    std::string where, value;
    for (std::size_t a = 0; a < t.b1.size() && ok; ++a)
      for (std::size_t b = a; b < t.b1.size() && ok; ++b) {
        const int alpha = t.b1[a];
        const int beta = t.b1[b];
        const Rat lhs = g.kappa(g.simple_coroot(t.tau.at(alpha)),
                                g.simple_coroot(t.tau.at(beta)));
        const Rat rhs = g.kappa(g.simple_coroot(alpha), g.simple_coroot(beta));
        if (lhs != rhs) {
          ok = false;
          where = "(alpha_" + std::to_string(alpha) + ",alpha_" + std::to_string(beta) + ")";
          value = rat_to_string(lhs) + " vs " + rat_to_string(rhs);
        }
      }
    if (ok)
      rep.add_pass("triple-isometry", sw.ms());
    else
      rep.add_fail("triple-isometry", where, value, sw.ms());
  }
  {
    Stopwatch sw;
    bool ok = true;
    std::string where;
    for (int alpha : t.b1) {
      int cur = alpha;
      int steps = 0;
      while (std::find(t.b1.begin(), t.b1.end(), cur) != t.b1.end()) {
        cur = t.tau.at(cur);
        if (++steps > g.simple_count()) break;
      }
      if (steps > g.simple_count()) {
        ok = false;
        where = "alpha_" + std::to_string(alpha);
        break;
      }
    }
    if (ok)
      rep.add_pass("triple-orbit-escape", sw.ms());
    else
      rep.add_fail("triple-orbit-escape", where, "orbit stays inside B1", sw.ms());
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Cartan solution.

F0Solution solve_f0(const ReductiveAlgebra& g, const AdmissibleTriple& t) {
  if (!validate_triple(g, t).all_passed())
    throw std::invalid_argument("solve_f0: triple is not admissible");
  const int n = g.cartan_dim;
  const RatMatrix& h = g.cartan_gram;

  // Unknown: the skew part s (f0 = 1/2 + s), entry (r, c) at index r*n + c.
  const int unknowns = n * n;
  std::vector<RatVector> rows;
  std::vector<Rat> rhs;
  auto add_row = [&](const RatVector& row, const Rat& b) {
    rows.push_back(row);
    rhs.push_back(b);
  };

  // Skewness: h s + s^T h = 0, entrywise.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RatVector row = RatVector::Zero(unknowns);
      for (int k = 0; k < n; ++k) {
        row(k * n + j) += h(i, k);
        row(k * n + i) += h(k, j);
      }
      add_row(row, Rat(0));
    }

  // Orbit constraints: s(c_alpha - c_tau) = -(c_alpha + c_tau)/2.
  for (int alpha : t.b1) {
    const RatVector ca = g.cartan_coords(g.simple_coroot(alpha));
    const RatVector ct = g.cartan_coords(g.simple_coroot(t.tau.at(alpha)));
    const RatVector diff = ca - ct;
    const RatVector sum = ca + ct;
    for (int i = 0; i < n; ++i) {
      RatVector row = RatVector::Zero(unknowns);
      for (int c = 0; c < n; ++c) row(i * n + c) = diff(c);
      add_row(row, -sum(i) / Rat(2));
    }
  }

  RatMatrix a(static_cast<Eigen::Index>(rows.size()), unknowns);
  RatMatrix b(static_cast<Eigen::Index>(rows.size()), 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    a.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    b(static_cast<Eigen::Index>(r), 0) = rhs[r];
  }

  F0Solution sol;
  RatMatrix u;
  sol.consistent = solve_exact(a, b, u);
  sol.freedom = static_cast<int>(unknowns - rank_of(a));
  RatMatrix s = RatMatrix::Zero(n, n);
  if (sol.consistent)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) s(r, c) = u(r * n + c, 0);
  sol.f0 = RatMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) sol.f0(i, i) = Rat(1) / Rat(2);
  sol.f0 += s;
  return sol;
}

// ---------------------------------------------------------------------------
// The tau order on positive roots.

TauOrder tau_order(const ReductiveAlgebra& g, const AdmissibleTriple& t) {
  require_valid_shape(g, t);
  TauOrder ord;
  ord.positive = g.positive;
  for (const auto& alpha : g.positive) {
    ord.geq.push_back({alpha, alpha});
    auto cur = alpha;
    int steps = 0;
    while (auto img = tau_image(t, cur)) {
      ord.geq.push_back({alpha, *img});
      cur = *img;
      if (++steps > g.num_positive)
        throw std::logic_error("tau_order: unexpected cycle on positive roots");
    }
  }
  return ord;
}

// ---------------------------------------------------------------------------
// The endomorphism f.

EndoF build_f(const ReductiveAlgebra& g, const BDQuadruple& quad) {
  if (!validate_triple(g, quad.triple).all_passed())
    throw std::invalid_argument("build_f: triple is not admissible");
  const int n = g.cartan_dim;
  if (quad.f0.rows() != n || quad.f0.cols() != n)
    throw std::invalid_argument("build_f: f0 has the wrong shape");
  // f0 + f0* = 1 wrt the Cartan form.
  {
    const RatMatrix fstar = g.cartan_gram_inv * quad.f0.transpose() * g.cartan_gram;
    if (!matrices_equal(quad.f0 + fstar, rat_identity(n)))
      throw std::invalid_argument("build_f: f0 + f0* != 1");
  }
  for (int alpha : quad.triple.b1) {
    const RatVector ca = g.cartan_coords(g.simple_coroot(alpha));
    const RatVector ct = g.cartan_coords(g.simple_coroot(quad.triple.tau.at(alpha)));
    const RatVector lhs = quad.f0 * ca;
    const RatVector rhs = quad.f0 * ct - ct;
    if (!matrices_equal(lhs, rhs))
      throw std::invalid_argument("build_f: f0 violates the orbit constraint");
  }

  const TauOrder ord = tau_order(g, quad.triple);
  RatMatrix f = RatMatrix::Zero(g.dim, g.dim);
  for (const auto& [alpha, beta] : ord.geq) {
    const int col_pos = g.root_slot(alpha);
    const int row_pos = g.root_slot(beta);
    if (beta != alpha) f(row_pos, col_pos) -= Rat(1);  // f(e_alpha) = -sum_{beta > alpha} e_beta
    // f(e_{-beta}) = sum_{alpha <= beta} e_{-alpha}, including alpha = beta
    f(g.num_positive + col_pos, g.num_positive + row_pos) += Rat(1);
  }
  f.block(2 * g.num_positive, 2 * g.num_positive, n, n) = quad.f0;
  return {f};
}

// ---------------------------------------------------------------------------
// Tensors.

RatOperator bd_r_matrix(const ReductiveAlgebra& g, const EndoF& f) {
  RatOperator r(g.m, 2);
  for (int mu = 0; mu < g.dim; ++mu) {
    const RatVector dual_coords = g.gram_inv.col(mu);
    const RatMatrix f_dual = g.from_coords(f.matrix * dual_coords);
    if (matrix_is_zero(f_dual)) continue;
    r += pair_tensor(g.basis[mu], f_dual);
  }
  return r;
}

RatOperator casimir_tensor(const ReductiveAlgebra& g) {
  const auto duals = g.dual_basis();
  RatOperator t(g.m, 2);
  for (int mu = 0; mu < g.dim; ++mu) t += pair_tensor(g.basis[mu], duals[mu]);
  return t;
}

// ---------------------------------------------------------------------------
// Bialgebra checks.

Report check_bialgebra(const ReductiveAlgebra& g, const EndoF& f) {
  if (f.matrix.rows() != g.dim || f.matrix.cols() != g.dim)
    throw std::invalid_argument("check_bialgebra: endomorphism has the wrong shape");
  Report rep;
  const RatMatrix& fm = f.matrix;
  const RatMatrix id = rat_identity(g.dim);

  {
    Stopwatch sw;
    const RatMatrix fstar = g.gram_inv * fm.transpose() * g.gram;
    const RatMatrix defect = fm + fstar - id;
    bool ok = true;
    std::string where, value;
    for (int i = 0; i < g.dim && ok; ++i)
      for (int j = 0; j < g.dim && ok; ++j)
        if (!is_zero(defect(i, j))) {
          ok = false;
          where = "(" + g.basis_label(i) + "," + g.basis_label(j) + ")";
          value = rat_to_string(defect(i, j));
        }
    if (ok)
      rep.add_pass("f-plus-f-star", sw.ms());
    else
      rep.add_fail("f-plus-f-star", where, value, sw.ms());
  }

  // Images of the basis under f, reused below.
  std::vector<RatMatrix> f_basis;
  f_basis.reserve(g.dim);
  for (int mu = 0; mu < g.dim; ++mu)
    f_basis.push_back(g.from_coords(fm.col(mu)));

  // Dual brackets of basis pairs and their images under f, shared by the
  // cocycle and Jacobi checks. pair_db[i][j] holds [e_i, e_j]_f for i < j.
  std::vector<std::vector<RatMatrix>> pair_db(g.dim), f_pair_db(g.dim);
  for (int i = 0; i < g.dim; ++i) {
    pair_db[i].resize(g.dim);
    f_pair_db[i].resize(g.dim);
    for (int j = i + 1; j < g.dim; ++j) {
      pair_db[i][j] = ReductiveAlgebra::bracket(g.basis[i], f_basis[j]) +
                      ReductiveAlgebra::bracket(f_basis[i], g.basis[j]) -
                      ReductiveAlgebra::bracket(g.basis[i], g.basis[j]);
      f_pair_db[i][j] = apply_endo(g, fm, pair_db[i][j]);
    }
  }

  {
    Stopwatch sw;
    bool ok = true;
    std::string where;
    for (int i = 0; i < g.dim && ok; ++i)
      for (int j = i + 1; j < g.dim && ok; ++j) {
        const RatMatrix lhs = ReductiveAlgebra::bracket(f_basis[i], f_basis[j]);
        if (!matrices_equal(lhs, f_pair_db[i][j])) {
          ok = false;
          where = "(" + g.basis_label(i) + "," + g.basis_label(j) + ")";
        }
      }
    if (ok)
      rep.add_pass("modified-cocycle", sw.ms(), "all basis pairs");
    else
      rep.add_fail("modified-cocycle", where, "identity fails", sw.ms());
  }

  {
    Stopwatch sw;
    bool ok = true;
    std::string where;
    // [b, e_k]_f with the f-image of b already known. The explicit return
    // type forces evaluation; otherwise the lambda would hand back an
    // expression tree referencing dead temporaries.
    auto db_with_basis = [&](const RatMatrix& b, const RatMatrix& f_b,
                             int k) -> RatMatrix {
      return ReductiveAlgebra::bracket(b, f_basis[k]) +
             ReductiveAlgebra::bracket(f_b, g.basis[k]) -
             ReductiveAlgebra::bracket(b, g.basis[k]);
    };
    // The dual bracket is antisymmetric, so distinct unordered triples
    // suffice for the Jacobi identity.
    for (int i = 0; i < g.dim && ok; ++i)
      for (int j = i + 1; j < g.dim && ok; ++j)
        for (int k = j + 1; k < g.dim && ok; ++k) {
          const RatMatrix jac = db_with_basis(pair_db[i][j], f_pair_db[i][j], k) -
                                db_with_basis(pair_db[i][k], f_pair_db[i][k], j) +
                                db_with_basis(pair_db[j][k], f_pair_db[j][k], i);
          if (!matrix_is_zero(jac)) {
            ok = false;
            where = "(" + g.basis_label(i) + "," + g.basis_label(j) + "," +
                    g.basis_label(k) + ")";
          }
        }
    if (ok)
      rep.add_pass("dual-bracket-jacobi", sw.ms(), "all distinct basis triples");
    else
      rep.add_fail("dual-bracket-jacobi", where, "Jacobi identity fails", sw.ms());
  }

  const RatOperator r = bd_r_matrix(g, f);
  const RatOperator t = casimir_tensor(g);

  {
    Stopwatch sw;
    const RatOperator residual = cybe_residual(r);
    if (residual.is_zero())
      rep.add_pass("classical-yang-baxter", sw.ms());
    else {
      std::string where, value;
      residual.for_each([&](RatOperator::Index row, RatOperator::Index col, const Rat& v) {
        if (where.empty()) {
          std::ostringstream os;
          os << "entry (" << row << "," << col << ")";
          where = os.str();
          value = rat_to_string(v);
        }
      });
      rep.add_fail("classical-yang-baxter", where, value, sw.ms());
    }
  }

  {
    Stopwatch sw;
    const RatOperator flip = RatOperator::flip(g.m, Rat(1));
    const RatOperator flipped = flip * r * flip;
    if (r + flipped == t)
      rep.add_pass("r-plus-flip-casimir", sw.ms());
    else
      rep.add_fail("r-plus-flip-casimir", "r + r_flip", "differs from the Casimir tensor",
                   sw.ms());
  }

  {
    Stopwatch sw;
    const RatOperator id1 = RatOperator::identity(g.m, 1, Rat(1));
    bool ok = true;
    std::string where;
    for (int mu = 0; mu < g.dim && ok; ++mu) {
      const RatOperator xop = op_of_matrix(g.basis[mu]);
      const RatOperator act = kron(xop, id1) + kron(id1, xop);
      if (!(act * t - t * act).is_zero()) {
        ok = false;
        where = g.basis_label(mu);
      }
    }
    if (ok)
      rep.add_pass("casimir-invariance", sw.ms());
    else
      rep.add_fail("casimir-invariance", where, "does not commute with the Casimir tensor",
                   sw.ms());
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Subalgebra and quotient analysis.

Report subalgebra_analysis(const ReductiveAlgebra& g, const EndoF& f,
                           QuotientData* out) {
  if (f.matrix.rows() != g.dim || f.matrix.cols() != g.dim)
    throw std::invalid_argument("subalgebra_analysis: endomorphism has the wrong shape");
  Report rep;
  const RatMatrix& fm = f.matrix;
  const RatMatrix id = rat_identity(g.dim);
  QuotientData qd;
  qd.c1 = image_of(fm - id);
  qd.ker_f = kernel_of(fm);
  qd.ker_f_minus_1 = kernel_of(fm - id);
  qd.k = image_of(hcat(qd.ker_f, qd.ker_f_minus_1));
  qd.c = qd.c1.cols() > 0 ? image_of(fm * qd.c1) : RatMatrix(g.dim, 0);
  qd.c1_perp = perp_of(g, qd.c1);

  {
    Stopwatch sw;
    if (same_span(qd.c1_perp, qd.ker_f))
      rep.add_pass("c1-perp-equals-ker-f", sw.ms());
    else
      rep.add_fail("c1-perp-equals-ker-f", "Im(f-1) perp vs Ker f",
                   std::to_string(qd.c1_perp.cols()) + " vs " +
                       std::to_string(qd.ker_f.cols()) + " dims or span mismatch",
                   sw.ms());
  }
  {
    Stopwatch sw;
    if (same_span(perp_of(g, qd.c), qd.k))
      rep.add_pass("c-perp-equals-k", sw.ms());
    else
      rep.add_fail("c-perp-equals-k", "f(c1) perp vs Ker f + Ker(f-1)", "span mismatch",
                   sw.ms());
  }

  auto bracket_closure = [&](const RatMatrix& span_a, const RatMatrix& span_b,
                             const RatMatrix& target) {
    std::vector<RatVector> cols;
    for (Eigen::Index i = 0; i < span_a.cols(); ++i)
      for (Eigen::Index j = 0; j < span_b.cols(); ++j) {
        const RatMatrix br = ReductiveAlgebra::bracket(
            g.from_coords(span_a.col(i)), g.from_coords(span_b.col(j)));
        cols.push_back(g.coords(br));
      }
    if (cols.empty()) return true;
    RatMatrix all(g.dim, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
      all.col(static_cast<Eigen::Index>(c)) = cols[c];
    return span_contains(target, all);
  };

  {
    Stopwatch sw;
    if (bracket_closure(qd.c1, qd.c1, qd.c1))
      rep.add_pass("c1-subalgebra", sw.ms());
    else
      rep.add_fail("c1-subalgebra", "Im(f-1)", "not closed under the bracket", sw.ms());
  }
  {
    Stopwatch sw;
    if (bracket_closure(qd.ker_f, qd.ker_f, qd.ker_f))
      rep.add_pass("ker-f-subalgebra", sw.ms());
    else
      rep.add_fail("ker-f-subalgebra", "Ker f", "not closed under the bracket", sw.ms());
  }
  bool perp_inside = false;
  {
    Stopwatch sw;
    perp_inside = qd.c1_perp.cols() == 0 || span_contains(qd.c1, qd.c1_perp);
    if (perp_inside)
      rep.add_pass("c1-perp-inside-c1", sw.ms());
    else
      rep.add_fail("c1-perp-inside-c1", "Im(f-1) perp", "not contained in Im(f-1)",
                   sw.ms());
  }
  {
    Stopwatch sw;
    if (bracket_closure(qd.c1, qd.c1_perp, qd.c1_perp))
      rep.add_pass("c1-perp-ideal-in-c1", sw.ms());
    else
      rep.add_fail("c1-perp-ideal-in-c1", "[Im(f-1), perp]", "leaves the perp", sw.ms());
  }

  bool descends = false;
  {
    Stopwatch sw;
    const bool keeps_c1 =
        qd.c1.cols() == 0 || span_contains(qd.c1, RatMatrix(fm * qd.c1));
    const bool keeps_perp =
        qd.c1_perp.cols() == 0 || span_contains(qd.c1_perp, RatMatrix(fm * qd.c1_perp));
    descends = keeps_c1 && keeps_perp && perp_inside;
    if (descends)
      rep.add_pass("f-descends-to-quotient", sw.ms());
    else
      rep.add_fail("f-descends-to-quotient", "f on Im(f-1) and its perp",
                   "does not preserve the filtration", sw.ms());
  }

  // Quotient basis: extend the perp basis to a basis of c1; the extra columns
  // represent the quotient.
  {
    RatMatrix accumulated = qd.c1_perp;
    std::vector<RatVector> reps;
    for (Eigen::Index i = 0; i < qd.c1.cols(); ++i) {
      RatMatrix trial = accumulated.cols() == 0
                            ? RatMatrix(qd.c1.col(i))
                            : hcat(accumulated, RatMatrix(qd.c1.col(i)));
      if (rank_of(trial) > rank_of(accumulated)) {
        accumulated = trial;
        reps.push_back(qd.c1.col(i));
      }
    }
    qd.quotient_dim = static_cast<int>(reps.size());
    qd.reps = RatMatrix(g.dim, qd.quotient_dim);
    for (int i = 0; i < qd.quotient_dim; ++i) qd.reps.col(i) = reps[i];
  }

  const int q = qd.quotient_dim;
  const RatMatrix full = q > 0 ? hcat(qd.c1_perp, qd.reps) : qd.c1_perp;
  const Eigen::Index perp_cols = qd.c1_perp.cols();

  // Quotient coordinates of a vector lying in c1.
  auto project = [&](const RatMatrix& v, RatMatrix* out_coords) {
    RatMatrix x;
    if (!solve_exact(full, v, x)) return false;
    *out_coords = x.block(perp_cols, 0, q, x.cols());
    return true;
  };

  bool quotient_ready = descends && q > 0;
  if (quotient_ready) {
    RatMatrix ft_cols;
    if (project(RatMatrix(fm * qd.reps), &ft_cols)) {
      qd.f_tilde = ft_cols;
    } else {
      quotient_ready = false;
    }
    qd.gram_tilde = qd.reps.transpose() * g.gram * qd.reps;
  }

  if (quotient_ready) {
    Stopwatch sw;
    Eigen::FullPivLU<RatMatrix> lu(qd.gram_tilde);
    lu.setThreshold(Rat(0));
    if (lu.isInvertible()) {
      rep.add_pass("quotient-form-nondegenerate", sw.ms(),
                   "quotient dimension " + std::to_string(q));
      const RatMatrix gt_inv = lu.inverse();
      {
        Stopwatch sw2;
        const RatMatrix fstar = gt_inv * qd.f_tilde.transpose() * qd.gram_tilde;
        if (matrices_equal(qd.f_tilde + fstar, rat_identity(q)))
          rep.add_pass("quotient-f-plus-f-star", sw2.ms());
        else
          rep.add_fail("quotient-f-plus-f-star", "induced operator",
                       "f-tilde + f-tilde* != 1", sw2.ms());
      }
      {
        Stopwatch sw2;
        bool ok = true;
        std::string where;
        // Lift, bracket, project. The perp is an ideal of c1, so the choice
        // of lift does not matter.
        auto qbracket = [&](const RatVector& u, const RatVector& v, RatVector* w) {
          const RatMatrix lift_u = g.from_coords(qd.reps * u);
          const RatMatrix lift_v = g.from_coords(qd.reps * v);
          RatMatrix pc;
          if (!project(RatMatrix(g.coords(ReductiveAlgebra::bracket(lift_u, lift_v))),
                       &pc))
            return false;
          *w = pc.col(0);
          return true;
        };
        for (int i = 0; i < q && ok; ++i)
          for (int j = i + 1; j < q && ok; ++j) {
            RatVector x = RatVector::Zero(q);
            RatVector y = RatVector::Zero(q);
            x(i) = Rat(1);
            y(j) = Rat(1);
            const RatVector fx = qd.f_tilde * x;
            const RatVector fy = qd.f_tilde * y;
            RatVector lhs, t1, t2, t3;
            if (!qbracket(fx, fy, &lhs) || !qbracket(x, fy, &t1) ||
                !qbracket(fx, y, &t2) || !qbracket(x, y, &t3)) {
              ok = false;
              where = "projection failure";
              break;
            }
            const RatVector rhs = qd.f_tilde * (t1 + t2 - t3);
            if (!matrices_equal(lhs, rhs)) {
              ok = false;
              where = "quotient pair (" + std::to_string(i + 1) + "," +
                      std::to_string(j + 1) + ")";
            }
          }
        if (ok)
          rep.add_pass("quotient-modified-cocycle", sw2.ms());
        else
          rep.add_fail("quotient-modified-cocycle", where, "identity fails", sw2.ms());
      }
    } else {
      rep.add_fail("quotient-form-nondegenerate", "induced form",
                   "rank " + std::to_string(rank_of(qd.gram_tilde)) + " of " +
                       std::to_string(q),
                   sw.ms());
    }
  }

  {
    Stopwatch sw;
    bool ok = true;
    std::string where;
    for (int i = 0; i < g.dim && ok; ++i)
      for (int j = i + 1; j < g.dim && ok; ++j) {
        const RatMatrix bf = dual_bracket(g, fm, g.basis[i], g.basis[j]);
        const RatVector lhs = (fm - id) * g.coords(bf);
        const RatMatrix br = ReductiveAlgebra::bracket(
            g.from_coords((fm - id).col(i)), g.from_coords((fm - id).col(j)));
        const RatVector diff = lhs - g.coords(br);
        RatMatrix diff_col(g.dim, 1);
        diff_col.col(0) = diff;
        if (!matrix_is_zero(diff_col) &&
            !(qd.c1_perp.cols() > 0 && span_contains(qd.c1_perp, diff_col))) {
          ok = false;
          where = "(" + g.basis_label(i) + "," + g.basis_label(j) + ")";
        }
      }
    if (ok)
      rep.add_pass("shifted-homomorphism", sw.ms(),
                   "(f-1) respects the dual bracket modulo the perp");
    else
      rep.add_fail("shifted-homomorphism", where, "defect escapes the perp", sw.ms());
  }

  {
    Stopwatch sw;
    bool ok = true;
    std::string where;
    for (int i = 0; i < g.dim && ok; ++i)
      for (int j = i + 1; j < g.dim && ok; ++j) {
        const RatMatrix bf = dual_bracket(g, fm, g.basis[i], g.basis[j]);
        const RatMatrix lhs = apply_endo(g, fm, bf);
        const RatMatrix rhs = ReductiveAlgebra::bracket(
            g.from_coords(fm.col(i)), g.from_coords(fm.col(j)));
        if (!matrices_equal(lhs, rhs)) {
          ok = false;
          where = "(" + g.basis_label(i) + "," + g.basis_label(j) + ")";
        }
      }
    if (ok)
      rep.add_pass("f-intertwines-dual-bracket", sw.ms());
    else
      rep.add_fail("f-intertwines-dual-bracket", where, "identity fails", sw.ms());
  }

  rep.add_info("subspace-dimensions",
               "c1=" + std::to_string(qd.c1.cols()) +
                   " ker_f=" + std::to_string(qd.ker_f.cols()) +
                   " ker_f_minus_1=" + std::to_string(qd.ker_f_minus_1.cols()) +
                   " k=" + std::to_string(qd.k.cols()) +
                   " c=" + std::to_string(qd.c.cols()) +
                   " quotient=" + std::to_string(qd.quotient_dim));

  if (out) *out = std::move(qd);
  return rep;
}

// ---------------------------------------------------------------------------
// Factorizable quotient structure.

namespace {

std::string tau_tilde_description(const AdmissibleTriple& t) {
  std::vector<int> intersection;
  for (int i : t.b1)
    if (std::find(t.b2.begin(), t.b2.end(), i) != t.b2.end())
      intersection.push_back(i);
  std::string desc;
  for (int alpha : t.b1) {
    const int image = t.tau.at(alpha);
    if (std::find(intersection.begin(), intersection.end(), image) ==
        intersection.end())
      continue;
    if (!desc.empty()) desc += ", ";
    desc += "alpha_" + std::to_string(alpha) + " -> alpha_" + std::to_string(image);
  }
  return desc.empty() ? "empty" : desc;
}

Report flb_structure(const ReductiveAlgebra& g, const BDQuadruple& quad,
                     const QuotientData& qd) {
  Report rep;
  const int n = g.cartan_dim;

  // a = Cartan span of B1 coroots plus both root spaces for every root
  // supported inside B1.
  int r1_count = 0;
  for (const auto& root : g.positive)
    if (support_inside(root_support(root), quad.triple.b1)) ++r1_count;
  const int dim_a = static_cast<int>(quad.triple.b1.size()) + 2 * r1_count;

  RatMatrix a_h(n, static_cast<Eigen::Index>(quad.triple.b1.size()));
  for (std::size_t c = 0; c < quad.triple.b1.size(); ++c)
    a_h.col(static_cast<Eigen::Index>(c)) =
        g.cartan_coords(g.simple_coroot(quad.triple.b1[c]));

  const RatMatrix w = image_of(quad.f0 - rat_identity(n));
  const RatMatrix perp_ah =
      a_h.cols() == 0 ? rat_identity(n) : kernel_of(RatMatrix(a_h.transpose() * g.cartan_gram));
  const RatMatrix v = span_intersection(w, perp_ah);

  {
    Stopwatch sw;
    const RatMatrix joined = a_h.cols() == 0 ? v : (v.cols() == 0 ? a_h : hcat(a_h, v));
    const bool splits = same_span(w, joined) &&
                        rank_of(joined) == a_h.cols() + v.cols();
    if (splits)
      rep.add_pass("flb-cartan-splitting", sw.ms(),
                   "Im(f0-1) = span(B1 coroots) + complementary piece");
    else
      rep.add_fail("flb-cartan-splitting", "Im(f0-1)",
                   "does not split against the B1 coroots", sw.ms());
  }

  int v_rank = 0;
  if (v.cols() > 0) {
    const RatMatrix gram_v = v.transpose() * g.cartan_gram * v;
    v_rank = static_cast<int>(rank_of(gram_v));
  }

  {
    Stopwatch sw;
    if (qd.quotient_dim == dim_a + v_rank)
      rep.add_pass("flb-quotient-dimension", sw.ms(),
                   std::to_string(qd.quotient_dim) + " = " + std::to_string(dim_a) +
                       " + " + std::to_string(v_rank));
    else
      rep.add_fail("flb-quotient-dimension",
                   "quotient dim " + std::to_string(qd.quotient_dim),
                   "expected " + std::to_string(dim_a) + " + " + std::to_string(v_rank),
                   sw.ms());
  }

  {
    Stopwatch sw;
    // Predicted Cartan dimension: the rank of the form on Im(f0-1).
    int expected = 0;
    if (w.cols() > 0)
      expected = static_cast<int>(rank_of(RatMatrix(w.transpose() * g.cartan_gram * w)));
    // Realized Cartan dimension: the image of h cap c1 inside the quotient.
    RatMatrix h_cols = RatMatrix::Zero(g.dim, n);
    for (int i = 0; i < n; ++i) h_cols(2 * g.num_positive + i, i) = Rat(1);
    const RatMatrix h_in_c1 = span_intersection(h_cols, qd.c1);
    int realized = 0;
    if (h_in_c1.cols() > 0 && qd.quotient_dim > 0) {
      const RatMatrix full = hcat(qd.c1_perp, qd.reps);
      RatMatrix x;
      if (solve_exact(full, h_in_c1, x)) {
        const RatMatrix bottom =
            x.block(qd.c1_perp.cols(), 0, qd.quotient_dim, x.cols());
        realized = static_cast<int>(rank_of(bottom));
      }
    }
    if (realized == expected)
      rep.add_pass("flb-cartan-dimension", sw.ms(),
                   "quotient Cartan dimension " + std::to_string(realized));
    else
      rep.add_fail("flb-cartan-dimension", "realized " + std::to_string(realized),
                   "expected " + std::to_string(expected), sw.ms());
  }

  rep.add_info("flb-induced-tau", tau_tilde_description(quad.triple));
  rep.add_info("flb-induced-quadruple",
               "quotient dimension " + std::to_string(qd.quotient_dim) +
                   ", induced map on the quotient Cartan carried by f-tilde");
  return rep;
}

}  // namespace

Report check_flb(const ReductiveAlgebra& g, const BDQuadruple& quad) {
  const EndoF f = build_f(g, quad);
  if (!check_bialgebra(g, f).all_passed())
    throw std::invalid_argument("check_flb: bialgebra checks fail for this quadruple");
  QuotientData qd;
  if (!subalgebra_analysis(g, f, &qd).all_passed())
    throw std::invalid_argument("check_flb: subalgebra analysis fails for this quadruple");
  return flb_structure(g, quad, qd);
}

// ---------------------------------------------------------------------------
// Cremmer-Gervais pipeline.

Report cg_pipeline(int m, bool with_semiclassical) {
  if (m < 3) throw std::invalid_argument("cg_pipeline: m must be at least 3");
  auto staged = [&](const char* label, auto&& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("cg_pipeline[") + label + "]: " + e.what());
    }
  };

  Report rep;
  const ReductiveAlgebra g =
      staged("build", [&] { return build_reductive(ReductiveAlgebra::Type::sl, m); });
  const AdmissibleTriple triple = cg_triple(m);
  rep.merge(staged("validate-triple", [&] { return validate_triple(g, triple); }));

  const F0Solution sol = staged("solve-f0", [&] { return solve_f0(g, triple); });
  {
    if (sol.consistent && sol.freedom == 0)
      rep.add_pass("f0-unique", 0.0);
    else
      rep.add_fail("f0-unique", "solution space",
                   sol.consistent ? "freedom " + std::to_string(sol.freedom)
                                  : "inconsistent system");
  }

  const BDQuadruple quad{triple, sol.f0};
  const EndoF f = staged("build-f", [&] { return build_f(g, quad); });
  rep.merge(staged("bialgebra", [&] { return check_bialgebra(g, f); }));
  QuotientData qd;
  rep.merge(staged("subalgebra", [&] { return subalgebra_analysis(g, f, &qd); }));

  if (rep.all_passed()) {
    rep.merge(staged("flb", [&] { return flb_structure(g, quad, qd); }));
  } else {
    rep.add_fail("flb-preconditions", "earlier stage", "skipped structural checks");
  }

  {
    // The shift triple shortens by one on each induction step.
    std::string expected;
    for (int i = 1; i <= m - 3; ++i) {
      if (!expected.empty()) expected += ", ";
      expected += "alpha_" + std::to_string(i) + " -> alpha_" + std::to_string(i + 1);
    }
    if (expected.empty()) expected = "empty";
    const std::string actual = tau_tilde_description(triple);
    if (actual == expected)
      rep.add_pass("induced-tau-shift", 0.0, actual);
    else
      rep.add_fail("induced-tau-shift", actual, "expected " + expected);
  }

  if (with_semiclassical) {
    Stopwatch sw;
    const auto r_q = staged("semiclassical", [&] {
      return semiclassical_limit(build_cg({m, false}), m, 1);
    });
    const RatOperator r_bd = bd_r_matrix(g, f);
    const RatOperator flip = RatOperator::flip(m, Rat(1));
    const RatOperator skew_q = r_q - flip * r_q * flip;
    const RatOperator skew_bd = r_bd - flip * r_bd * flip;
    std::string verdict;
    if (skew_q == skew_bd) {
      verdict = "skew parts agree exactly";
    } else {
      // Look for a single overall scalar.
      Rat ratio;
      bool have_ratio = false;
      bool proportional = true;
      skew_bd.for_each([&](RatOperator::Index row, RatOperator::Index col, const Rat& v) {
        if (!have_ratio && !is_zero(v)) {
          ratio = skew_q.entry_flat(row, col) / v;
          have_ratio = true;
        }
      });
      if (have_ratio) {
        const RatOperator scaled = ratio * skew_bd;
        proportional = scaled == skew_q;
      } else {
        proportional = skew_q.is_zero();
      }
      if (proportional && have_ratio)
        verdict = "skew parts proportional, factor " + rat_to_string(ratio);
      else if (proportional)
        verdict = "both skew parts vanish";
      else
        verdict = "skew parts differ beyond an overall scalar";
    }
    rep.add_info("semiclassical-skew-comparison", verdict, sw.ms());
  }
  return rep;
}

}  // namespace cgkit
