#include "linset/endos.hpp"

#include <algorithm>

namespace linset {

namespace {

std::vector<std::string_view> split_view(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

Endo endo_zero(const FieldTower& tw) {
  tw.require_ring_support();
  Endo a;
  a.m.nrows = a.m.ncols = std::uint8_t(tw.t());
  return a;
}

Endo endo_identity(const FieldTower& tw) {
  tw.require_ring_support();
  Endo a;
  a.m = packed_identity(tw.t());
  return a;
}

Endo endo_from_mat(const FieldTower& tw, const PackedMat& m) {
  tw.require_ring_support();
  if (m.nrows != tw.t() || m.ncols != tw.t()) fail(Err::InvalidArgument, "endo matrix must be t x t");
  return {m};
}

Endo rho(const FieldTower& tw, FqtElem a) {
  Endo r = endo_zero(tw);
  FqtElem basis{1};
  for (unsigned i = 0; i < tw.t(); ++i) {
    r.m.row[i] = tw.coords_row(tw.mul(a, basis));
    basis = tw.mul(basis, tw.gen());
  }
  return r;
}

Endo frob_endo(const FieldTower& tw, unsigned i) {
  Endo r = endo_zero(tw);
  FqtElem basis{1};
  for (unsigned j = 0; j < tw.t(); ++j) {
    r.m.row[j] = tw.coords_row(tw.frobenius(basis, long(i)));
    basis = tw.mul(basis, tw.gen());
  }
  return r;
}

Endo from_qpoly(const FieldTower& tw, const std::vector<FqtElem>& c) {
  if (c.size() != tw.t()) fail(Err::InvalidArgument, "q-polynomial needs exactly t coefficients");
  Endo r = endo_zero(tw);
  FqtElem basis{1};
  for (unsigned j = 0; j < tw.t(); ++j) {
    FqtElem img = tw.zero();
    for (unsigned i = 0; i < tw.t(); ++i) {
      if (c[i].idx == 0) continue;
      img = tw.add(img, tw.mul(c[i], tw.frobenius(basis, long(i))));
    }
    r.m.row[j] = tw.coords_row(img);
    basis = tw.mul(basis, tw.gen());
  }
  return r;
}

std::vector<FqtElem> to_qpoly(const FieldTower& tw, const Endo& a) {
  // Solve the Moore system sum_i c_i b_j^(q^i) = a(b_j) over F_{q^t} by
  // Gaussian elimination; the basis Moore matrix is invertible.
  const unsigned t = tw.t();
  std::vector<std::vector<FqtElem>> aug(t, std::vector<FqtElem>(t + 1));
  FqtElem basis{1};
  for (unsigned j = 0; j < t; ++j) {
    for (unsigned i = 0; i < t; ++i) aug[j][i] = tw.frobenius(basis, long(i));
    aug[j][t] = endo_apply(tw, a, basis);
    basis = tw.mul(basis, tw.gen());
  }
  for (unsigned col = 0; col < t; ++col) {
    unsigned piv = col;
    while (piv < t && aug[piv][col].idx == 0) ++piv;
    if (piv == t) fail(Err::SingularEndo, "Moore system unexpectedly singular");
    std::swap(aug[piv], aug[col]);
    FqtElem il = tw.inv(aug[col][col]);
    for (unsigned k = col; k <= t; ++k) aug[col][k] = tw.mul(aug[col][k], il);
    for (unsigned r = 0; r < t; ++r) {
      if (r == col || aug[r][col].idx == 0) continue;
      FqtElem f = aug[r][col];
      for (unsigned k = col; k <= t; ++k)
        aug[r][k] = tw.sub(aug[r][k], tw.mul(f, aug[col][k]));
    }
  }
  std::vector<FqtElem> c(t);
  for (unsigned i = 0; i < t; ++i) c[i] = aug[i][t];
  return c;
}

FqtElem endo_apply(const FieldTower& tw, const Endo& a, FqtElem x) {
  Row coords = tw.coords_row(x);
  const RowOps& ops = tw.rows();
  Row out = 0;
  for (unsigned j = 0; j < tw.t(); ++j) {
    unsigned d = row_digit(coords, j);
    if (d) out = ops.add(out, ops.scale(a.m.row[j], d));
  }
  return tw.from_coords_row(out);
}

Endo compose(const FieldTower& tw, const Endo& a, const Endo& b) {
  return {matmul(a.m, b.m, tw.rows())};
}

Endo endo_add(const FieldTower& tw, const Endo& a, const Endo& b) {
  const RowOps& ops = tw.rows();
  Endo r = a;
  for (unsigned i = 0; i < tw.t(); ++i) r.m.row[i] = ops.add(a.m.row[i], b.m.row[i]);
  return r;
}

Endo endo_sub(const FieldTower& tw, const Endo& a, const Endo& b) {
  const RowOps& ops = tw.rows();
  Endo r = a;
  for (unsigned i = 0; i < tw.t(); ++i) r.m.row[i] = ops.add(a.m.row[i], ops.neg(b.m.row[i]));
  return r;
}

Endo endo_invert(const FieldTower& tw, const Endo& a) {
  return {inverse_of(a.m, tw.rows())};
}

bool endo_is_invertible(const FieldTower& tw, const Endo& a) {
  return rank_of(a.m, tw.rows()) == tw.t();
}

unsigned kernel_dim(const FieldTower& tw, const Endo& a) {
  return tw.t() - rank_of(a.m, tw.rows());
}

bool has_eigenvalue(const FieldTower& tw, const Endo& a, FqtElem lambda) {
  return kernel_dim(tw, endo_sub(tw, a, rho(tw, lambda))) >= 1;
}

std::string encode_endo(const FieldTower& tw, const Endo& a) {
  auto c = to_qpoly(tw, a);
  std::string s = "Q:";
  for (unsigned i = 0; i < tw.t(); ++i) {
    if (i) s += '/';
    s += tw.encode(c[i]);
  }
  return s;
}

Endo parse_endo(const FieldTower& tw, std::string_view s) {
  if (s.size() < 2 || s[1] != ':') fail(Err::BadEncoding, "endo string needs a Q: or M: prefix");
  char kind = s[0];
  auto rows = split_view(s.substr(2), '/');
  if (rows.size() != tw.t()) fail(Err::BadEncoding, "endo encoding needs t rows");
  if (kind == 'Q') {
    std::vector<FqtElem> c(tw.t());
    for (unsigned i = 0; i < tw.t(); ++i) c[i] = tw.parse_elem(rows[i]);
    return from_qpoly(tw, c);
  }
  if (kind == 'M') {
    Endo a = endo_zero(tw);
    for (unsigned i = 0; i < tw.t(); ++i) {
      auto entries = split_view(rows[i], ';');
      if (entries.size() != tw.t()) fail(Err::BadEncoding, "endo matrix row needs t entries");
      for (unsigned j = 0; j < tw.t(); ++j) {
        std::uint64_t d = tw.parse_fq(entries[j]);
        a.m.set_digit(i, j, unsigned(d));
      }
    }
    return a;
  }
  fail(Err::BadEncoding, "unknown endo encoding kind");
}

std::vector<Endo> enumerate_endos(const FieldTower& tw) {
  tw.require_ring_support();
  const unsigned t = tw.t();
  const std::uint64_t q = tw.q();
  long double total = 1.0L;
  for (unsigned i = 0; i < t * t; ++i) total *= q;
  if (total > (1u << 21)) fail(Err::BudgetExceeded, "q^(t^2) endomorphisms exceed enumeration budget");
  std::vector<Endo> out;
  out.reserve(std::size_t(total));
  Endo a = endo_zero(tw);
  while (true) {
    out.push_back(a);
    // row-major counting increment
    unsigned i = 0, j = 0;
    bool carry = true;
    for (i = 0; i < t && carry; ++i) {
      for (j = 0; j < t && carry; ++j) {
        unsigned d = a.m.digit(i, j) + 1;
        if (d < q) {
          a.m.set_digit(i, j, d);
          carry = false;
        } else {
          a.m.set_digit(i, j, 0);
        }
      }
    }
    if (carry) break;
  }
  return out;
}

}  // namespace linset
