#include "cgkit/cg_rmatrix.hpp"

#include <stdexcept>

namespace cgkit {

namespace {

LaurentPoly qp_monomial(const Rat& c, int eq, int ep) {
  return LaurentPoly::monomial(c, {eq, ep});
}

// Coefficient families of the entry table, already divided by the leading p.
LaurentPoly diag_ge(int i, int l) { return qp_monomial(Rat(1), 1, 2 * (l - i) - 1); }
LaurentPoly diag_lt(int i, int l) { return qp_monomial(Rat(1), -1, 2 * (l - i) - 1); }
LaurentPoly off_pos(int i, int l) {
  return qp_monomial(Rat(1), 1, 2 * (l - i) - 1) - qp_monomial(Rat(1), -1, 2 * (l - i) - 1);
}

std::string entry_location(int n, std::uint64_t row, std::uint64_t col, int legs) {
  MultiIndex out = unflatten_index(row, n, legs);
  MultiIndex in = unflatten_index(col, n, legs);
  std::string s = "out=(";
  for (std::size_t t = 0; t < out.size(); ++t)
    s += (t ? "," : "") + std::to_string(out[t]);
  s += "), in=(";
  for (std::size_t t = 0; t < in.size(); ++t)
    s += (t ? "," : "") + std::to_string(in[t]);
  s += ")";
  return s;
}

// Adds a pass entry, or a fail entry witnessing the first nonzero residual.
template <class Scalar>
void report_zero_residual(Report& rep, std::string name,
                          const SparseOperator<Scalar>& residual, double ms,
                          std::string note = "") {
  if (residual.is_zero()) {
    rep.add_pass(std::move(name), ms, std::move(note));
    return;
  }
  const auto& [col, rows] = *residual.columns().begin();
  const auto& [row, value] = *rows.begin();
  std::string val_str;
  if constexpr (std::is_same_v<Scalar, LaurentPoly>)
    val_str = value.str();
  else
    val_str = rat_to_string(value);
  rep.add_fail(std::move(name),
               entry_location(residual.base_dim(), row, col, residual.legs()),
               std::move(val_str), ms, std::move(note));
}

LaurentOperator yang_baxter_operator(const LaurentOperator& r) {
  auto p_flip = LaurentPoly::p() * LaurentOperator::flip(r.base_dim(), LaurentPoly(1));
  return r * p_flip;  // pRP applied as R after pP
}

}  // namespace

LaurentOperator build_cg(const CGParams& params) {
  const int n = params.n;
  if (n < 1) throw std::invalid_argument("R-matrix base dimension must be >= 1");
  LaurentOperator r(n, 2);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i >= j)
        r.set_entry({i, j}, {i, j}, diag_ge(i, j));
      else
        r.set_entry({i, j}, {i, j}, diag_lt(i, j));
      // Off-diagonal bands live on the anti-diagonal k+l = i+j.
      for (int k = j; k < i; ++k) {
        int l = i + j - k;
        if (l >= 1 && l <= n) r.set_entry({k, l}, {i, j}, off_pos(i, l));
      }
      for (int k = i + 1; k < j; ++k) {
        int l = i + j - k;
        if (l >= 1 && l <= n) r.set_entry({k, l}, {i, j}, -off_pos(i, l));
      }
    }
  }
  if (params.one_param) {
    LaurentPoly pn = LaurentPoly::p(n);
    r = r.map_entries([&](const LaurentPoly& c) { return c.substitute_var("q", pn); });
  }
  return r;
}

Report check_yang_baxter(const LaurentOperator& r) {
  Report rep;
  if (r.legs() != 2) throw std::invalid_argument("YBE check requires a 2-leg operator");
  {
    Stopwatch sw;
    report_zero_residual(rep, "yang-baxter", ybe_residual(r), sw.ms());
  }
  {
    Stopwatch sw;
    report_zero_residual(rep, "braid", braid_residual(yang_baxter_operator(r)), sw.ms());
  }
  return rep;
}

Report check_hecke(const LaurentOperator& r) {
  Report rep;
  if (r.legs() != 2) throw std::invalid_argument("Hecke check requires a 2-leg operator");
  Stopwatch sw;
  const int n = r.base_dim();
  auto rhat = yang_baxter_operator(r);
  auto id = LaurentOperator::identity(n, 2, LaurentPoly(1));
  auto residual = (rhat - LaurentPoly::q() * id) * (rhat + LaurentPoly::q(-1) * id);
  report_zero_residual(rep, "hecke", residual, sw.ms());
  return rep;
}

LaurentOperator hecke_inverse(const LaurentOperator& r) {
  if (!check_hecke(r).all_passed())
    throw std::domain_error("operator does not satisfy the Hecke equation");
  const int n = r.base_dim();
  auto flip = LaurentOperator::flip(n, LaurentPoly(1));
  auto qdiff = LaurentPoly::q() - LaurentPoly::q(-1);
  auto candidate = LaurentPoly::p(2) * (flip * r * flip) -
                   (LaurentPoly::p() * qdiff) * flip;
  auto id = LaurentOperator::identity(n, 2, LaurentPoly(1));
  if (candidate * r != id || r * candidate != id)
    throw std::logic_error("Hecke inverse candidate failed to invert R");
  return candidate;
}

Report check_structure_identities(int n) {
  Report rep;
  if (n < 2) throw std::invalid_argument("structure identities require n >= 2");
  auto r = build_cg({n, false});
  auto rinv = hecke_inverse(r);

  {
    Stopwatch sw;
    auto substituted = r.map_entries([](const LaurentPoly& c) { return c.substitute_inverse(); });
    report_zero_residual(rep, "inverse-substitution", rinv - substituted, sw.ms(),
                         "R^-1 = R(q^-1,p^-1)");
  }

  {
    Stopwatch sw;
    bool ok = true;
    Report local;
    for (int i = 1; i <= n - 1 && ok; ++i)
      for (int j = 1; j <= n && ok; ++j)
        for (int k = 1; k <= n - 1 && ok; ++k)
          for (int l = 1; l <= n && ok; ++l) {
            auto lhs = rinv.entry({k, l}, {i, j});
            auto rhs = r.entry({l, k + 1}, {j, i + 1});
            if (lhs != rhs) {
              ok = false;
              rep.add_fail("index-shift",
                           "(R^-1) out=(" + std::to_string(k) + "," + std::to_string(l) +
                               "), in=(" + std::to_string(i) + "," + std::to_string(j) + ")",
                           (lhs - rhs).str(), sw.ms());
            }
          }
    if (ok) rep.add_pass("index-shift", sw.ms(), "(R^-1)_ij^kl = R_{j,i+1}^{l,k+1}");
  }

  {
    Stopwatch sw;
    auto r_small = build_cg({n - 1, false});
    bool shift_ok = true, corner_ok = true;
    for (int i = 1; i <= n - 1; ++i)
      for (int j = 1; j <= n - 1; ++j)
        for (int k = 1; k <= n - 1; ++k)
          for (int l = 1; l <= n - 1; ++l) {
            auto small = r_small.entry({k, l}, {i, j});
            if (r.entry({k + 1, l + 1}, {i + 1, j + 1}) != small) shift_ok = false;
            if (r.entry({k, l}, {i, j}) != small) corner_ok = false;
          }
    if (shift_ok)
      rep.add_pass("index-shift-embedding", sw.ms(), "R_n at indices+1 equals R_{n-1}");
    else
      rep.add_fail("index-shift-embedding", "shifted block", "mismatch", sw.ms());
    if (corner_ok)
      rep.add_pass("principal-corner", sw.ms(), "R_n at indices <= n-1 equals R_{n-1}");
    else
      rep.add_fail("principal-corner", "corner block", "mismatch", sw.ms());
  }

  {
    Stopwatch sw;
    bool ok = true;
    r.for_each([&](std::uint64_t row, std::uint64_t col, const LaurentPoly& v) {
      MultiIndex out = unflatten_index(row, n, 2);
      MultiIndex in = unflatten_index(col, n, 2);
      if (in[0] + in[1] != out[0] + out[1] && !v.is_zero()) {
        if (ok) rep.add_fail("homogeneity", entry_location(n, row, col, 2), v.str(), 0.0);
        ok = false;
      }
    });
    if (ok) rep.add_pass("homogeneity", sw.ms(), "nonzero entries satisfy i+j = k+l");
  }

  return rep;
}

LaurentOperator build_twist_Q(int n) {
  if (n < 1) throw std::invalid_argument("twist requires n >= 1");
  LaurentOperator q_op(n, 2);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      q_op.set_entry({i, j}, {i, j}, LaurentPoly::p(j - i));
  return q_op;
}

LaurentOperator twist(const LaurentOperator& r, const LaurentOperator& q_op) {
  if (r.legs() != 2 || q_op.legs() != 2 || r.base_dim() != q_op.base_dim())
    throw std::invalid_argument("twist requires matching 2-leg operators");
  const auto d = q_op.dim();
  // Invertible diagonal: exactly one monomial entry per column, on the diagonal.
  LaurentOperator q_inv(q_op.base_dim(), 2);
  if (q_op.columns().size() != d)
    throw std::domain_error("twist operator is not invertible diagonal");
  for (const auto& [col, rows] : q_op.columns()) {
    if (rows.size() != 1 || rows.begin()->first != col || !rows.begin()->second.is_monomial())
      throw std::domain_error("twist operator is not invertible diagonal");
    q_inv.set_entry_flat(col, col, rows.begin()->second.monomial_inverse());
  }
  auto flip = LaurentOperator::flip(r.base_dim(), LaurentPoly(1));
  return q_op * r * (flip * q_inv * flip);
}

Report check_twist_identity(int n) {
  Report rep;
  if (n < 2) throw std::invalid_argument("twist identities require n >= 2");
  auto r = build_cg({n, false});
  auto q_op = build_twist_Q(n);
  auto flip = LaurentOperator::flip(n, LaurentPoly(1));

  {
    Stopwatch sw;
    LaurentOperator q_inv(n, 2);
    for (const auto& [col, rows] : q_op.columns())
      q_inv.set_entry_flat(col, col, rows.begin()->second.monomial_inverse());
    report_zero_residual(rep, "twist-flip-conjugation", flip * q_inv * flip - q_op, sw.ms(),
                         "P Q^-1 P = Q");
  }

  auto r_sigma = twist(r, q_op);

  {
    Stopwatch sw;
    report_zero_residual(rep, "twisted-yang-baxter", ybe_residual(r_sigma), sw.ms());
  }

  {
    Stopwatch sw;
    LaurentOperator q_inv(n, 2);
    for (const auto& [col, rows] : q_op.columns())
      q_inv.set_entry_flat(col, col, rows.begin()->second.monomial_inverse());
    auto lhs = yang_baxter_operator(r_sigma);
    auto rhs = q_op * yang_baxter_operator(r) * q_inv;
    report_zero_residual(rep, "twist-braid-conjugation", lhs - rhs, sw.ms(),
                         "pR_sigma P = Q (pRP) Q^-1");
  }

  {
    Stopwatch sw;
    auto r_at_one = r.map_entries(
        [](const LaurentPoly& c) { return c.substitute_var("p", LaurentPoly(1)); });
    auto lhs = LaurentPoly::p() * r;
    auto rhs = q_op * r_at_one * q_op;
    report_zero_residual(rep, "twist-specialization", lhs - rhs, sw.ms(),
                         "p R(q,p) = Q(p) R(q,1) Q(p)");
  }

  {
    // Group law Q(p) Q(p') = Q(p p') over a ring with an extra variable.
    Stopwatch sw;
    auto vars3 = LaurentPoly::make_vars({"q", "p", "p2"});
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i)
      for (int j = 1; j <= n && ok; ++j) {
        auto qp = LaurentPoly::monomial(Rat(1), {0, j - i, 0}, vars3);
        auto qp2 = LaurentPoly::monomial(Rat(1), {0, 0, j - i}, vars3);
        auto combined = LaurentPoly::monomial(Rat(1), {0, j - i, j - i}, vars3);
        if (qp * qp2 != combined) {
          ok = false;
          rep.add_fail("twist-group-law",
                       "diag (" + std::to_string(i) + "," + std::to_string(j) + ")",
                       (qp * qp2 - combined).str(), sw.ms());
        }
      }
    if (ok) rep.add_pass("twist-group-law", sw.ms(), "Q(p) Q(p') = Q(p p') on diagonal entries");
  }

  return rep;
}

RatOperator semiclassical_limit(const LaurentOperator& r, const Rat& u_q, const Rat& u_p) {
  if (r.legs() != 2) throw std::invalid_argument("semiclassical limit requires a 2-leg operator");
  const int n = r.base_dim();
  const std::vector<Rat> direction{u_q, u_p};
  RatOperator value_at_one(n, 2), slope(n, 2);
  r.for_each([&](std::uint64_t row, std::uint64_t col, const LaurentPoly& v) {
    auto jet = v.first_order(direction);
    value_at_one.add_entry_flat(row, col, jet.value);
    slope.add_entry_flat(row, col, jet.derivative);
  });
  if (value_at_one != RatOperator::identity(n, 2, Rat(1)))
    throw std::domain_error("R at (q,p) = (1,1) is not the identity");
  if (!cybe_residual(slope).is_zero())
    throw std::logic_error("first-order term violates the classical Yang-Baxter equation");
  return slope;
}

Report check_semiclassical(int n, const Rat& u_q, const Rat& u_p, RatOperator* out) {
  Report rep;
  auto r = build_cg({n, false});
  Stopwatch sw;
  RatOperator slope(n, 2);
  try {
    slope = semiclassical_limit(r, u_q, u_p);
  } catch (const std::exception& e) {
    rep.add_fail("semiclassical-cybe", "first-order term", e.what(), sw.ms());
    return rep;
  }
  rep.add_pass("semiclassical-identity-at-one", sw.ms());
  report_zero_residual(rep, "semiclassical-cybe", cybe_residual(slope), sw.ms(),
                       "classical YBE for the first-order term");
  if (out) *out = slope;
  return rep;
}

}  // namespace cgkit
