#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "xb/rng.hpp"

namespace xb {

// Bit-packed vector over GF(2). Trailing padding bits in the last word are
// kept at zero.
class GF2Vector {
 public:
  GF2Vector() = default;
  explicit GF2Vector(std::size_t len) : len_(len), w_((len + 63) / 64, 0) {}

  std::size_t size() const { return len_; }

  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= mask;
    else
      w_[i >> 6] &= ~mask;
  }

  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  void xor_with(const GF2Vector &other);
  bool is_zero() const;
  std::size_t weight() const;
  bool dot(const GF2Vector &other) const;  // <this, other> over GF(2)

  std::span<const std::uint64_t> words() const { return w_; }

  friend bool operator==(const GF2Vector &, const GF2Vector &) = default;

 private:
  std::size_t len_ = 0;
  std::vector<std::uint64_t> w_;
};

// Bit-packed row-major matrix over GF(2). Row operations are word-parallel
// XORs. Values are immutable by convention once constructed by the builders
// below; all free functions take their inputs by const reference.
class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), w_(rows * wpr_, 0) {}

  static GF2Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (w_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
  }

  void set(std::size_t r, std::size_t c, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (c & 63);
    if (v)
      w_[r * wpr_ + (c >> 6)] |= mask;
    else
      w_[r * wpr_ + (c >> 6)] &= ~mask;
  }

  // row[dst] ^= row[src]
  void row_xor(std::size_t dst, std::size_t src) {
    std::uint64_t *d = &w_[dst * wpr_];
    const std::uint64_t *s = &w_[src * wpr_];
    for (std::size_t i = 0; i < wpr_; ++i) d[i] ^= s[i];
  }

  void row_swap(std::size_t a, std::size_t b);

  GF2Vector row(std::size_t r) const;
  void set_row(std::size_t r, const GF2Vector &v);
  std::size_t row_weight(std::size_t r) const;
  bool row_is_zero(std::size_t r) const;

  GF2Vector mul(const GF2Vector &x) const;   // this * x
  GF2Matrix mul(const GF2Matrix &b) const;   // this * b
  GF2Matrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const GF2Matrix &, const GF2Matrix &) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<std::uint64_t> w_;
};

struct RrefResult {
  GF2Matrix matrix;                    // reduced row echelon form
  std::vector<std::size_t> pivot_cols; // in column-scan (selection) order
  std::size_t rank = 0;
};

std::size_t rank(const GF2Matrix &m);

// Full-row-rank H with H * a = 0 and rows(H) = rows(a) - rank(a).
GF2Matrix left_kernel_basis(const GF2Matrix &a);

// Basis of {x : m * x = 0}, one vector per row; rows = cols(m) - rank(m).
GF2Matrix right_kernel_basis(const GF2Matrix &m);

// Gaussian elimination scanning columns in the given order, taking each
// first column that enlarges the row space of the rows processed so far.
RrefResult rref_in_column_order(const GF2Matrix &m,
                                std::span<const std::size_t> order);

RrefResult rref(const GF2Matrix &m);

// Some b0 with h * b0 = u, or nullopt when u is not in the image of h.
std::optional<GF2Vector> solve_affine(const GF2Matrix &h, const GF2Vector &u);

// Uniform element of {b : h * b = u}. Throws std::invalid_argument on an
// empty fiber. Exact uniformity: b0 plus a uniform right-kernel element.
GF2Vector sample_coset_uniform(const GF2Matrix &h, const GF2Vector &u,
                               SplitMix64 &rng);

// True iff removing the column strictly decreases rank(m).
bool is_coloop(const GF2Matrix &m, std::size_t col);

}  // namespace xb
