#pragma once

// Row/matrix kernels over F_q with one byte lane per coordinate, at most 8
// lanes per row. Everything the geometry layer does (ranks, RREF canonical
// forms, collineation images) reduces to these operations, so they are kept
// allocation-free: a row is a single uint64.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "linset/errors.hpp"

namespace linset {

using Row = std::uint64_t;
inline constexpr unsigned kMaxLanes = 8;

inline unsigned row_digit(Row r, unsigned lane) { return unsigned((r >> (8 * lane)) & 0xffu); }

inline Row row_with_digit(Row r, unsigned lane, unsigned d) {
  return (r & ~(Row(0xffu) << (8 * lane))) | (Row(d) << (8 * lane));
}

// F_q arithmetic on packed rows. p = 2 towers add with a plain XOR (base-2
// digit vectors carry-free); prime fields with p <= 61 use SWAR
// conditional-subtract; everything else falls back to per-lane tables.
class RowOps {
 public:
  enum class Mode : std::uint8_t { Xor, SwarPrime, Table };

  RowOps() = default;
  RowOps(unsigned p, unsigned q, const std::uint8_t* add_tab, const std::uint8_t* mul_tab,
         const std::uint8_t* inv_tab, const std::uint8_t* neg_tab)
      : p_(p), q_(q), add_tab_(add_tab), mul_tab_(mul_tab), inv_tab_(inv_tab), neg_tab_(neg_tab) {
    if (p == 2) {
      mode_ = Mode::Xor;
    } else if (q == p && p <= 61) {
      mode_ = Mode::SwarPrime;
      lane_p_ = kOnes * Row(p);
      over_k_ = kOnes * Row(0x80 - p);
    } else {
      mode_ = Mode::Table;
    }
  }

  unsigned q() const { return q_; }

  Row add(Row a, Row b) const {
    switch (mode_) {
      case Mode::Xor:
        return a ^ b;
      case Mode::SwarPrime: {
        Row x = a + b;  // lanes <= 2p-2 < 128, no carries
        Row over = ((x + over_k_) & kHi) >> 7;
        return x - over * Row(p_);
      }
      default: {
        Row out = 0;
        for (unsigned i = 0; i < kMaxLanes; ++i)
          out |= Row(add_tab_[row_digit(a, i) * q_ + row_digit(b, i)]) << (8 * i);
        return out;
      }
    }
  }

  Row neg(Row a) const {
    switch (mode_) {
      case Mode::Xor:
        return a;
      case Mode::SwarPrime: {
        Row x = lane_p_ - a;  // lanes in [1, p]
        Row over = ((x + over_k_) & kHi) >> 7;
        return x - over * Row(p_);
      }
      default: {
        Row out = 0;
        for (unsigned i = 0; i < kMaxLanes; ++i) out |= Row(neg_tab_[row_digit(a, i)]) << (8 * i);
        return out;
      }
    }
  }

  Row scale(Row a, unsigned s) const {
    if (s == 0) return 0;
    if (s == 1) return a;
    if (mode_ == Mode::SwarPrime && s == p_ - 1) return neg(a);
    Row out = 0;
    for (unsigned i = 0; i < kMaxLanes; ++i) {
      unsigned d = row_digit(a, i);
      if (d) out |= Row(mul_tab_[d * q_ + s]) << (8 * i);
    }
    return out;
  }

  unsigned fq_neg(unsigned d) const { return neg_tab_[d]; }
  unsigned fq_inv(unsigned d) const { return inv_tab_[d]; }

 private:
  static constexpr Row kOnes = 0x0101010101010101ull;
  static constexpr Row kHi = 0x8080808080808080ull;

  Mode mode_ = Mode::Table;
  unsigned p_ = 0, q_ = 0;
  Row lane_p_ = 0, over_k_ = 0;
  const std::uint8_t* add_tab_ = nullptr;
  const std::uint8_t* mul_tab_ = nullptr;
  const std::uint8_t* inv_tab_ = nullptr;
  const std::uint8_t* neg_tab_ = nullptr;
};

// Dense matrix with up to 8 rows of up to 8 F_q digits. Rows past nrows stay
// zero so whole-struct equality is canonical once the matrix is in RREF.
struct PackedMat {
  std::uint8_t nrows = 0;
  std::uint8_t ncols = 0;
  std::array<Row, kMaxLanes> row{};

  friend bool operator==(const PackedMat&, const PackedMat&) = default;
  unsigned digit(unsigned r, unsigned c) const { return row_digit(row[r], c); }
  void set_digit(unsigned r, unsigned c, unsigned d) { row[r] = row_with_digit(row[r], c, d); }
};

PackedMat packed_identity(unsigned n);
PackedMat stack_mats(const PackedMat& a, const PackedMat& b);

// Reduced row echelon form in place; returns the rank. If mirror is given the
// same row operations are applied to it (Gauss-Jordan inverse trick).
unsigned rref(PackedMat& m, const RowOps& ops, PackedMat* mirror = nullptr);

unsigned rank_of(PackedMat m, const RowOps& ops);

// a (n x m) times b (m x k).
PackedMat matmul(const PackedMat& a, const PackedMat& b, const RowOps& ops);

// Inverse of a square matrix; fails with SingularEndo if singular.
PackedMat inverse_of(const PackedMat& m, const RowOps& ops);

// Deterministic digit-by-digit order (row-major), used for canonical sorting.
int compare_mats(const PackedMat& a, const PackedMat& b);

struct PackedMatHash {
  std::size_t operator()(const PackedMat& m) const {
    std::size_t h = (std::size_t(m.nrows) << 8) | m.ncols;
    for (unsigned i = 0; i < m.nrows; ++i)
      h = h * 0x9e3779b97f4a7c15ull + std::hash<Row>{}(m.row[i]);
    return h;
  }
};

}  // namespace linset
