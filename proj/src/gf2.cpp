#include "xb/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace xb {

void GF2Vector::xor_with(const GF2Vector &other) {
  if (other.len_ != len_) throw std::invalid_argument("GF2Vector length mismatch");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= other.w_[i];
}

bool GF2Vector::is_zero() const {
  for (std::uint64_t x : w_)
    if (x) return false;
  return true;
}

std::size_t GF2Vector::weight() const {
  std::size_t w = 0;
  for (std::uint64_t x : w_) w += std::popcount(x);
  return w;
}

bool GF2Vector::dot(const GF2Vector &other) const {
  if (other.len_ != len_) throw std::invalid_argument("GF2Vector length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & other.w_[i];
  return (std::popcount(acc) & 1) != 0;
}

GF2Matrix GF2Matrix::identity(std::size_t n) {
  GF2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void GF2Matrix::row_swap(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < wpr_; ++i)
    std::swap(w_[a * wpr_ + i], w_[b * wpr_ + i]);
}

GF2Vector GF2Matrix::row(std::size_t r) const {
  GF2Vector v(cols_);
  for (std::size_t c = 0; c < cols_; ++c)
    if (get(r, c)) v.set(c, true);
  return v;
}

void GF2Matrix::set_row(std::size_t r, const GF2Vector &v) {
  if (v.size() != cols_) throw std::invalid_argument("set_row length mismatch");
  for (std::size_t c = 0; c < cols_; ++c) set(r, c, v.get(c));
}

std::size_t GF2Matrix::row_weight(std::size_t r) const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < wpr_; ++i) w += std::popcount(w_[r * wpr_ + i]);
  return w;
}

bool GF2Matrix::row_is_zero(std::size_t r) const {
  for (std::size_t i = 0; i < wpr_; ++i)
    if (w_[r * wpr_ + i]) return false;
  return true;
}

GF2Vector GF2Matrix::mul(const GF2Vector &x) const {
  if (x.size() != cols_) throw std::invalid_argument("mat*vec dimension mismatch");
  GF2Vector y(rows_);
  std::span<const std::uint64_t> xw = x.words();
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    const std::uint64_t *rw = &w_[r * wpr_];
    for (std::size_t i = 0; i < wpr_; ++i) acc ^= rw[i] & xw[i];
    if (std::popcount(acc) & 1) y.set(r, true);
  }
  return y;
}

GF2Matrix GF2Matrix::mul(const GF2Matrix &b) const {
  if (cols_ != b.rows_) throw std::invalid_argument("mat*mat dimension mismatch");
  // out.row(r) = XOR of b.row(c) over c with this(r,c) = 1.
  GF2Matrix out(rows_, b.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!get(r, c)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b.get(c, j)) out.set(r, j, !out.get(r, j));
    }
  }
  return out;
}

GF2Matrix GF2Matrix::transpose() const {
  GF2Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

bool GF2Matrix::is_zero() const {
  for (std::uint64_t x : w_)
    if (x) return false;
  return true;
}

RrefResult rref_in_column_order(const GF2Matrix &m,
                                std::span<const std::size_t> order) {
  if (order.size() != m.cols())
    throw std::invalid_argument("order must be a permutation of the columns");
  GF2Matrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t next_row = 0;
  for (std::size_t c : order) {
    if (c >= m.cols()) throw std::invalid_argument("column index out of range");
    std::size_t r = next_row;
    while (r < a.rows() && !a.get(r, c)) ++r;
    if (r == a.rows()) continue;
    a.row_swap(next_row, r);
    for (std::size_t r2 = 0; r2 < a.rows(); ++r2)
      if (r2 != next_row && a.get(r2, c)) a.row_xor(r2, next_row);
    pivots.push_back(c);
    ++next_row;
  }
  return RrefResult{std::move(a), std::move(pivots), next_row};
}

RrefResult rref(const GF2Matrix &m) {
  std::vector<std::size_t> order(m.cols());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  return rref_in_column_order(m, order);
}

std::size_t rank(const GF2Matrix &m) { return rref(m).rank; }

GF2Matrix left_kernel_basis(const GF2Matrix &a) {
  const std::size_t m = a.rows(), n = a.cols();
  // Eliminate [a | I_m]; rows whose a-part vanishes carry the kernel combos.
  GF2Matrix aug(m, n + m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c)
      if (a.get(r, c)) aug.set(r, c, true);
    aug.set(r, n + r, true);
  }
  std::size_t next_row = 0;
  for (std::size_t c = 0; c < n && next_row < m; ++c) {
    std::size_t r = next_row;
    while (r < m && !aug.get(r, c)) ++r;
    if (r == m) continue;
    aug.row_swap(next_row, r);
    for (std::size_t r2 = 0; r2 < m; ++r2)
      if (r2 != next_row && aug.get(r2, c)) aug.row_xor(r2, next_row);
    ++next_row;
  }
  const std::size_t kernel_rows = m - next_row;
  GF2Matrix h(kernel_rows, m);
  for (std::size_t i = 0; i < kernel_rows; ++i)
    for (std::size_t c = 0; c < m; ++c)
      if (aug.get(next_row + i, n + c)) h.set(i, c, true);
  return h;
}

GF2Matrix right_kernel_basis(const GF2Matrix &m) {
  const RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  GF2Matrix basis(free_cols.size(), m.cols());
  for (std::size_t i = 0; i < free_cols.size(); ++i) {
    const std::size_t f = free_cols[i];
    basis.set(i, f, true);
    for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r)
      if (rr.matrix.get(r, f)) basis.set(i, rr.pivot_cols[r], true);
  }
  return basis;
}

std::optional<GF2Vector> solve_affine(const GF2Matrix &h, const GF2Vector &u) {
  if (u.size() != h.rows())
    throw std::invalid_argument("solve_affine: rows(h) != len(u)");
  const std::size_t m = h.cols();
  GF2Matrix aug(h.rows(), m + 1);
  for (std::size_t r = 0; r < h.rows(); ++r) {
    for (std::size_t c = 0; c < m; ++c)
      if (h.get(r, c)) aug.set(r, c, true);
    if (u.get(r)) aug.set(r, m, true);
  }
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  // Eliminate over the first m columns only; the last column rides along.
  std::vector<std::size_t> pivots;
  std::size_t next_row = 0;
  for (std::size_t c = 0; c < m && next_row < aug.rows(); ++c) {
    std::size_t r = next_row;
    while (r < aug.rows() && !aug.get(r, c)) ++r;
    if (r == aug.rows()) continue;
    aug.row_swap(next_row, r);
    for (std::size_t r2 = 0; r2 < aug.rows(); ++r2)
      if (r2 != next_row && aug.get(r2, c)) aug.row_xor(r2, next_row);
    pivots.push_back(c);
    ++next_row;
  }
  for (std::size_t r = next_row; r < aug.rows(); ++r)
    if (aug.get(r, m)) return std::nullopt;  // 0 = 1 row: empty fiber

  GF2Vector b0(m);  // free variables at zero
  for (std::size_t r = 0; r < pivots.size(); ++r)
    if (aug.get(r, m)) b0.set(pivots[r], true);
  return b0;
}

GF2Vector sample_coset_uniform(const GF2Matrix &h, const GF2Vector &u,
                               SplitMix64 &rng) {
  std::optional<GF2Vector> b0 = solve_affine(h, u);
  if (!b0) throw std::invalid_argument("sample_coset_uniform: u not in Im(h)");
  const GF2Matrix kernel = right_kernel_basis(h);
  GF2Vector b = *b0;
  for (std::size_t i = 0; i < kernel.rows(); ++i)
    if (rng.next_bit()) b.xor_with(kernel.row(i));
  return b;
}

bool is_coloop(const GF2Matrix &m, std::size_t col) {
  if (col >= m.cols()) throw std::invalid_argument("is_coloop: column out of range");
  GF2Matrix without = m;
  for (std::size_t r = 0; r < m.rows(); ++r) without.set(r, col, false);
  return rank(without) < rank(m);
}

}  // namespace xb
