#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cgkit {

// Multi-indices are 1-based component vectors (i_1, ..., i_k) with each
// component in [1, n]. Flattening is row-major:
//   (i_1, ..., i_k)  ->  sum_j (i_j - 1) * n^(k-j)     (0-based linear index).
using MultiIndex = std::vector<int>;

inline std::uint64_t flatten_index(const MultiIndex& m, int n) {
  std::uint64_t idx = 0;
  for (int c : m) {
    if (c < 1 || c > n) throw std::out_of_range("multi-index component out of range");
    idx = idx * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(c - 1);
  }
  return idx;
}

inline MultiIndex unflatten_index(std::uint64_t idx, int n, int legs) {
  MultiIndex m(legs);
  for (int j = legs - 1; j >= 0; --j) {
    m[j] = static_cast<int>(idx % n) + 1;
    idx /= n;
  }
  return m;
}

// Sparse linear operator on (C^n)^(tensor k) with entries in an exact scalar
// ring (rationals or Laurent polynomials). The entry at (out, in) is the
// coefficient of e_out in the image of e_in. Entries are stored
// column-indexed; zero values are never stored, so structural equality is
// semantic equality.
template <class Scalar>
class SparseOperator {
 public:
  using Index = std::uint64_t;
  using Column = std::map<Index, Scalar>;
  using Storage = std::map<Index, Column>;

  SparseOperator(int base_dim, int legs) : n_(base_dim), legs_(legs) {
    if (base_dim < 1) throw std::invalid_argument("base dimension must be positive");
    if (legs < 1) throw std::invalid_argument("leg count must be positive");
  }

  static SparseOperator identity(int base_dim, int legs,
                                 const Scalar& one = Scalar(1)) {
    SparseOperator out(base_dim, legs);
    const Index d = out.dim();
    for (Index i = 0; i < d; ++i) out.cols_[i][i] = one;
    return out;
  }

  // Leg swap P(x tensor y) = y tensor x on (C^n)^2.
  static SparseOperator flip(int base_dim, const Scalar& one = Scalar(1)) {
    SparseOperator out(base_dim, 2);
    for (int i = 1; i <= base_dim; ++i)
      for (int j = 1; j <= base_dim; ++j)
        out.cols_[flatten_index({i, j}, base_dim)][flatten_index({j, i}, base_dim)] = one;
    return out;
  }

  int base_dim() const { return n_; }
  int legs() const { return legs_; }
  Index dim() const {
    Index d = 1;
    for (int j = 0; j < legs_; ++j) d *= static_cast<Index>(n_);
    return d;
  }

  const Storage& columns() const { return cols_; }
  std::size_t nnz() const {
    std::size_t c = 0;
    for (const auto& [col, rows] : cols_) c += rows.size();
    return c;
  }
  bool is_zero() const { return cols_.empty(); }

  Scalar entry(const MultiIndex& out, const MultiIndex& in) const {
    check_multi(out);
    check_multi(in);
    return entry_flat(flatten_index(out, n_), flatten_index(in, n_));
  }

  Scalar entry_flat(Index row, Index col) const {
    auto c = cols_.find(col);
    if (c == cols_.end()) return Scalar{};
    auto r = c->second.find(row);
    return r == c->second.end() ? Scalar{} : r->second;
  }

  void set_entry(const MultiIndex& out, const MultiIndex& in, Scalar v) {
    check_multi(out);
    check_multi(in);
    set_entry_flat(flatten_index(out, n_), flatten_index(in, n_), std::move(v));
  }

  void set_entry_flat(Index row, Index col, Scalar v) {
    if (is_zero_scalar(v)) {
      auto c = cols_.find(col);
      if (c != cols_.end()) {
        c->second.erase(row);
        if (c->second.empty()) cols_.erase(c);
      }
      return;
    }
    cols_[col][row] = std::move(v);
  }

  void add_entry_flat(Index row, Index col, const Scalar& v) {
    if (is_zero_scalar(v)) return;
    auto& cell = cols_[col][row];
    cell += v;
    if (is_zero_scalar(cell)) {
      cols_[col].erase(row);
      if (cols_[col].empty()) cols_.erase(col);
    }
  }

  // Visits entries ordered by (column, row).
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [col, rows] : cols_)
      for (const auto& [row, v] : rows) fn(row, col, v);
  }

  template <class Fn>
  auto map_entries(Fn&& fn) const {
    using Out = std::decay_t<decltype(fn(std::declval<const Scalar&>()))>;
    SparseOperator<Out> out(n_, legs_);
    for_each([&](Index row, Index col, const Scalar& v) {
      out.set_entry_flat(row, col, fn(v));
    });
    return out;
  }

  // Embeds a 2-leg operator into legs (pos_a, pos_b) of a k-leg space,
  // identity elsewhere. Positions are 1-based and distinct; pos_a carries
  // the first tensor factor of *this.
  SparseOperator embed(int pos_a, int pos_b, int total_legs) const {
    if (legs_ != 2) throw std::logic_error("embed requires a 2-leg operator");
    if (pos_a < 1 || pos_b < 1 || pos_a > total_legs || pos_b > total_legs ||
        pos_a == pos_b)
      throw std::invalid_argument("invalid embedding positions");
    SparseOperator out(n_, total_legs);
    const int spectators = total_legs - 2;
    Index ctx_count = 1;
    for (int j = 0; j < spectators; ++j) ctx_count *= static_cast<Index>(n_);
    std::vector<int> spectator_pos;
    for (int j = 1; j <= total_legs; ++j)
      if (j != pos_a && j != pos_b) spectator_pos.push_back(j);
    for (const auto& [col, rows] : cols_) {
      MultiIndex in2 = unflatten_index(col, n_, 2);
      for (const auto& [row, v] : rows) {
        MultiIndex out2 = unflatten_index(row, n_, 2);
        for (Index ctx = 0; ctx < ctx_count; ++ctx) {
          MultiIndex ctx_multi = unflatten_index(ctx, n_, spectators);
          MultiIndex in_full(total_legs), out_full(total_legs);
          in_full[pos_a - 1] = in2[0];
          in_full[pos_b - 1] = in2[1];
          out_full[pos_a - 1] = out2[0];
          out_full[pos_b - 1] = out2[1];
          for (int j = 0; j < spectators; ++j) {
            in_full[spectator_pos[j] - 1] = ctx_multi[j];
            out_full[spectator_pos[j] - 1] = ctx_multi[j];
          }
          out.cols_[flatten_index(in_full, n_)][flatten_index(out_full, n_)] = v;
        }
      }
    }
    return out;
  }

  SparseOperator& operator+=(const SparseOperator& o) {
    require_same_shape(o);
    o.for_each([&](Index row, Index col, const Scalar& v) { add_entry_flat(row, col, v); });
    return *this;
  }

  SparseOperator& operator-=(const SparseOperator& o) {
    require_same_shape(o);
    o.for_each([&](Index row, Index col, const Scalar& v) {
      Scalar neg = -v;
      add_entry_flat(row, col, neg);
    });
    return *this;
  }

  friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) { return a += b; }
  friend SparseOperator operator-(SparseOperator a, const SparseOperator& b) { return a -= b; }

  friend SparseOperator operator*(const Scalar& c, const SparseOperator& a) {
    SparseOperator out(a.n_, a.legs_);
    a.for_each([&](Index row, Index col, const Scalar& v) {
      out.set_entry_flat(row, col, c * v);
    });
    return out;
  }

  // Composition (a then applied after b): (a * b) x = a(b(x)).
  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    a.require_same_shape(b);
    SparseOperator out(a.n_, a.legs_);
    for (const auto& [col, mids] : b.cols_) {
      for (const auto& [mid, bv] : mids) {
        auto ac = a.cols_.find(mid);
        if (ac == a.cols_.end()) continue;
        for (const auto& [row, av] : ac->second) out.add_entry_flat(row, col, av * bv);
      }
    }
    return out;
  }

  bool operator==(const SparseOperator& o) const {
    return n_ == o.n_ && legs_ == o.legs_ && cols_ == o.cols_;
  }
  bool operator!=(const SparseOperator& o) const { return !(*this == o); }

 private:
  template <class S>
  friend class SparseOperator;

  static bool is_zero_scalar(const Scalar& v) {
    using cgkit::is_zero;
    return is_zero(v);
  }

  void check_multi(const MultiIndex& m) const {
    if (static_cast<int>(m.size()) != legs_)
      throw std::invalid_argument("multi-index arity does not match leg count");
  }

  void require_same_shape(const SparseOperator& o) const {
    if (n_ != o.n_ || legs_ != o.legs_)
      throw std::invalid_argument("operator shape mismatch");
  }

  int n_;
  int legs_;
  Storage cols_;
};

template <class Scalar>
SparseOperator<Scalar> kron(const SparseOperator<Scalar>& a,
                            const SparseOperator<Scalar>& b) {
  if (a.base_dim() != b.base_dim())
    throw std::invalid_argument("kron requires matching base dimensions");
  SparseOperator<Scalar> out(a.base_dim(), a.legs() + b.legs());
  const auto db = b.dim();
  a.for_each([&](std::uint64_t ra, std::uint64_t ca, const Scalar& va) {
    b.for_each([&](std::uint64_t rb, std::uint64_t cb, const Scalar& vb) {
      out.set_entry_flat(ra * db + rb, ca * db + cb, va * vb);
    });
  });
  return out;
}

// R12 R13 R23 - R23 R13 R12 on three legs; zero iff r solves the
// quantum Yang-Baxter equation.
template <class Scalar>
SparseOperator<Scalar> ybe_residual(const SparseOperator<Scalar>& r) {
  auto r12 = r.embed(1, 2, 3);
  auto r13 = r.embed(1, 3, 3);
  auto r23 = r.embed(2, 3, 3);
  return r12 * r13 * r23 - r23 * r13 * r12;
}

// B12 B23 B12 - B23 B12 B23; zero iff b satisfies the braid relation.
template <class Scalar>
SparseOperator<Scalar> braid_residual(const SparseOperator<Scalar>& b) {
  auto b12 = b.embed(1, 2, 3);
  auto b23 = b.embed(2, 3, 3);
  return b12 * b23 * b12 - b23 * b12 * b23;
}

// [r12, r13] + [r12, r23] + [r13, r23]; zero iff r solves the classical
// Yang-Baxter equation.
template <class Scalar>
SparseOperator<Scalar> cybe_residual(const SparseOperator<Scalar>& r) {
  auto r12 = r.embed(1, 2, 3);
  auto r13 = r.embed(1, 3, 3);
  auto r23 = r.embed(2, 3, 3);
  auto comm = [](const SparseOperator<Scalar>& x, const SparseOperator<Scalar>& y) {
    return x * y - y * x;
  };
  return comm(r12, r13) + comm(r12, r23) + comm(r13, r23);
}

}  // namespace cgkit
