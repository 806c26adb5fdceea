#include "linset/packed.hpp"

namespace linset {

PackedMat packed_identity(unsigned n) {
  PackedMat m;
  m.nrows = m.ncols = std::uint8_t(n);
  for (unsigned i = 0; i < n; ++i) m.set_digit(i, i, 1);
  return m;
}

PackedMat stack_mats(const PackedMat& a, const PackedMat& b) {
  PackedMat m;
  m.nrows = std::uint8_t(a.nrows + b.nrows);
  m.ncols = a.ncols;
  for (unsigned i = 0; i < a.nrows; ++i) m.row[i] = a.row[i];
  for (unsigned i = 0; i < b.nrows; ++i) m.row[a.nrows + i] = b.row[i];
  return m;
}

unsigned rref(PackedMat& m, const RowOps& ops, PackedMat* mirror) {
  unsigned r = 0;
  for (unsigned c = 0; c < m.ncols && r < m.nrows; ++c) {
    unsigned pivot = m.nrows;
    for (unsigned i = r; i < m.nrows; ++i) {
      if (m.digit(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == m.nrows) continue;
    std::swap(m.row[pivot], m.row[r]);
    if (mirror) std::swap(mirror->row[pivot], mirror->row[r]);
    unsigned d = m.digit(r, c);
    if (d != 1) {
      unsigned s = ops.fq_inv(d);
      m.row[r] = ops.scale(m.row[r], s);
      if (mirror) mirror->row[r] = ops.scale(mirror->row[r], s);
    }
    for (unsigned j = 0; j < m.nrows; ++j) {
      if (j == r) continue;
      unsigned dj = m.digit(j, c);
      if (dj) {
        unsigned s = ops.fq_neg(dj);
        m.row[j] = ops.add(m.row[j], ops.scale(m.row[r], s));
        if (mirror) mirror->row[j] = ops.add(mirror->row[j], ops.scale(mirror->row[r], s));
      }
    }
    ++r;
  }
  return r;
}

unsigned rank_of(PackedMat m, const RowOps& ops) { return rref(m, ops); }

PackedMat matmul(const PackedMat& a, const PackedMat& b, const RowOps& ops) {
  PackedMat c;
  c.nrows = a.nrows;
  c.ncols = b.ncols;
  for (unsigned i = 0; i < a.nrows; ++i) {
    Row acc = 0;
    for (unsigned k = 0; k < a.ncols; ++k) {
      unsigned d = a.digit(i, k);
      if (d) acc = ops.add(acc, ops.scale(b.row[k], d));
    }
    c.row[i] = acc;
  }
  return c;
}

PackedMat inverse_of(const PackedMat& m, const RowOps& ops) {
  PackedMat a = m;
  PackedMat inv = packed_identity(m.nrows);
  inv.ncols = m.ncols;
  if (rref(a, ops, &inv) != m.nrows) fail(Err::SingularEndo, "matrix is singular");
  return inv;
}

int compare_mats(const PackedMat& a, const PackedMat& b) {
  if (a.nrows != b.nrows) return a.nrows < b.nrows ? -1 : 1;
  if (a.ncols != b.ncols) return a.ncols < b.ncols ? -1 : 1;
  for (unsigned i = 0; i < a.nrows; ++i) {
    for (unsigned c = 0; c < a.ncols; ++c) {
      unsigned da = a.digit(i, c), db = b.digit(i, c);
      if (da != db) return da < db ? -1 : 1;
    }
  }
  return 0;
}

}  // namespace linset
