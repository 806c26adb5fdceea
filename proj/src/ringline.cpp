#include "linset/ringline.hpp"

#include <algorithm>
#include <array>

namespace linset {

FieldPoint make_field_point(const FieldTower& tw, FqtElem a, FqtElem b) {
  if (a.idx == 0 && b.idx == 0) fail(Err::InvalidArgument, "(0,0) is not a projective point");
  if (a.idx == 0) return {tw.zero(), tw.one()};
  return {tw.one(), tw.mul(b, tw.inv(a))};
}

std::string encode_field_point(const FieldTower& tw, const FieldPoint& P) {
  return tw.encode(P.a) + "|" + tw.encode(P.b);
}

FieldPoint parse_field_point(const FieldTower& tw, std::string_view s) {
  std::size_t bar = s.find('|');
  if (bar == std::string_view::npos) fail(Err::BadEncoding, "field point needs the form a|b");
  return make_field_point(tw, tw.parse_elem(s.substr(0, bar)), tw.parse_elem(s.substr(bar + 1)));
}

std::vector<FieldPoint> enumerate_field_points(const FieldTower& tw) {
  std::vector<FieldPoint> out;
  out.reserve(tw.qt() + 1);
  out.push_back({tw.zero(), tw.one()});
  for (std::uint64_t b = 0; b < tw.qt(); ++b) out.push_back({tw.one(), tw.elem(b)});
  return out;
}

std::uint64_t field_point_index(const FieldTower& tw, const FieldPoint& P) {
  return P.a.idx == 0 ? tw.qt() : P.b.idx;
}

Endo RingProjectivity::block(const FieldTower& tw, unsigned i, unsigned j) const {
  const unsigned t = tw.t();
  Endo a = endo_zero(tw);
  for (unsigned r = 0; r < t; ++r)
    for (unsigned c = 0; c < t; ++c) a.m.set_digit(r, c, m.digit(i * t + r, j * t + c));
  return a;
}

RingPoint ring_point_from_mat(const FieldTower& tw, PackedMat m) {
  if (rref(m, tw.rows()) != tw.t()) fail(Err::NotAdmissible, "pair generates a subspace of rank < t");
  return {m};
}

RingPoint ring_point(const FieldTower& tw, const Endo& alpha, const Endo& beta) {
  const unsigned t = tw.t();
  PackedMat m;
  m.nrows = std::uint8_t(t);
  m.ncols = std::uint8_t(2 * t);
  for (unsigned i = 0; i < t; ++i) m.row[i] = alpha.m.row[i] | (beta.m.row[i] << (8 * t));
  return ring_point_from_mat(tw, m);
}

bool is_distant(const FieldTower& tw, const RingPoint& P, const RingPoint& Q) {
  return rank_of(stack_mats(P.m, Q.m), tw.rows()) == 2 * tw.t();
}

RingPoint embed_field_point(const FieldTower& tw, const FieldPoint& P) {
  return ring_point(tw, rho(tw, P.a), rho(tw, P.b));
}

std::optional<FieldPoint> preimage_in_standard_chain(const FieldTower& tw, const RingPoint& P) {
  // Read a candidate (a,b) off the first row and compare canonical forms.
  const unsigned t = tw.t();
  Row lo = 0, hi = 0;
  for (unsigned c = 0; c < t; ++c) {
    lo = row_with_digit(lo, c, P.m.digit(0, c));
    hi = row_with_digit(hi, c, P.m.digit(0, t + c));
  }
  FqtElem a = tw.from_coords_row(lo), b = tw.from_coords_row(hi);
  if (a.idx == 0 && b.idx == 0) return std::nullopt;
  FieldPoint cand = make_field_point(tw, a, b);
  if (embed_field_point(tw, cand) == P) return cand;
  return std::nullopt;
}

RingProjectivity make_projectivity_mat(const FieldTower& tw, const PackedMat& m) {
  if (rank_of(m, tw.rows()) != 2 * tw.t())
    fail(Err::SingularEndo, "projectivity matrix must be invertible");
  return {m};
}

RingProjectivity make_projectivity(const FieldTower& tw, const Endo& a, const Endo& b,
                                   const Endo& c, const Endo& d) {
  const unsigned t = tw.t();
  PackedMat m;
  m.nrows = m.ncols = std::uint8_t(2 * t);
  for (unsigned i = 0; i < t; ++i) {
    m.row[i] = a.m.row[i] | (b.m.row[i] << (8 * t));
    m.row[t + i] = c.m.row[i] | (d.m.row[i] << (8 * t));
  }
  return make_projectivity_mat(tw, m);
}

RingProjectivity projectivity_identity(const FieldTower& tw) {
  tw.require_ring_support();
  return {packed_identity(2 * tw.t())};
}

RingProjectivity compose(const FieldTower& tw, const RingProjectivity& a, const RingProjectivity& b) {
  return {matmul(a.m, b.m, tw.rows())};
}

RingProjectivity inverse(const FieldTower& tw, const RingProjectivity& a) {
  return {inverse_of(a.m, tw.rows())};
}

RingProjectivity random_projectivity(const FieldTower& tw, std::mt19937_64& rng) {
  tw.require_ring_support();
  const unsigned n = 2 * tw.t();
  std::uniform_int_distribution<unsigned> dist(0, unsigned(tw.q() - 1));
  while (true) {
    PackedMat m;
    m.nrows = m.ncols = std::uint8_t(n);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) m.set_digit(i, j, dist(rng));
    if (rank_of(m, tw.rows()) == n) return {m};
  }
}

RingPoint apply_projectivity(const FieldTower& tw, const RingPoint& P, const RingProjectivity& phi) {
  PackedMat img = matmul(P.m, phi.m, tw.rows());
  rref(img, tw.rows());
  return {img};
}

RingPoint scale_point(const FieldTower& tw, const RingPoint& T, FqtElem h) {
  if (h.idx == 0) fail(Err::ZeroScalar, "scaling by 0");
  Endo rh = rho(tw, h);
  Endo z = endo_zero(tw);
  return apply_projectivity(tw, T, make_projectivity(tw, rh, z, z, rh));
}

Chain standard_chain(const FieldTower& tw) {
  Chain c;
  c.witness = projectivity_identity(tw);
  for (const FieldPoint& P : enumerate_field_points(tw)) c.points.push_back(embed_field_point(tw, P));
  std::sort(c.points.begin(), c.points.end());
  return c;
}

Chain chain_image(const FieldTower& tw, const Chain& c, const RingProjectivity& phi) {
  Chain out;
  out.witness = compose(tw, c.witness, phi);
  out.points.reserve(c.points.size());
  for (const RingPoint& P : c.points) out.points.push_back(apply_projectivity(tw, P, phi));
  std::sort(out.points.begin(), out.points.end());
  return out;
}

bool chain_contains(const Chain& c, const RingPoint& P) {
  return std::binary_search(c.points.begin(), c.points.end(), P);
}

namespace {

// The unique element of PGL_2(q^t) mapping one ordered triple of distinct
// points to another, as a 2x2 matrix over F_{q^t} acting on row vectors.
std::array<FqtElem, 4> pgl2_from_fundamental(const FieldTower& tw, const FieldPoint& X,
                                             const FieldPoint& Y, const FieldPoint& Z) {
  // solve z = a*x + b*y componentwise in F_{q^t}^2
  FqtElem x1 = X.a, x2 = X.b, y1 = Y.a, y2 = Y.b, z1 = Z.a, z2 = Z.b;
  FqtElem det = tw.sub(tw.mul(x1, y2), tw.mul(x2, y1));
  FqtElem a = tw.mul(tw.inv(det), tw.sub(tw.mul(z1, y2), tw.mul(z2, y1)));
  FqtElem b = tw.mul(tw.inv(det), tw.sub(tw.mul(x1, z2), tw.mul(x2, z1)));
  return {tw.mul(a, x1), tw.mul(a, x2), tw.mul(b, y1), tw.mul(b, y2)};
}

std::array<FqtElem, 4> mat2_mul(const FieldTower& tw, const std::array<FqtElem, 4>& A,
                                const std::array<FqtElem, 4>& B) {
  return {tw.add(tw.mul(A[0], B[0]), tw.mul(A[1], B[2])),
          tw.add(tw.mul(A[0], B[1]), tw.mul(A[1], B[3])),
          tw.add(tw.mul(A[2], B[0]), tw.mul(A[3], B[2])),
          tw.add(tw.mul(A[2], B[1]), tw.mul(A[3], B[3]))};
}

std::array<FqtElem, 4> mat2_inv(const FieldTower& tw, const std::array<FqtElem, 4>& A) {
  FqtElem det = tw.sub(tw.mul(A[0], A[3]), tw.mul(A[1], A[2]));
  FqtElem id = tw.inv(det);
  return {tw.mul(id, A[3]), tw.neg(tw.mul(id, A[1])), tw.neg(tw.mul(id, A[2])), tw.mul(id, A[0])};
}

}  // namespace

std::array<FqtElem, 4> pgl2_map_triples(const FieldTower& tw, const std::array<FieldPoint, 3>& src,
                                        const std::array<FieldPoint, 3>& dst) {
  auto ms = pgl2_from_fundamental(tw, src[0], src[1], src[2]);
  auto md = pgl2_from_fundamental(tw, dst[0], dst[1], dst[2]);
  return mat2_mul(tw, mat2_inv(tw, ms), md);
}

RingProjectivity map_triples_on_chains(const FieldTower& tw, const Chain& c1,
                                       const std::array<RingPoint, 3>& src, const Chain& c2,
                                       const std::array<RingPoint, 3>& dst) {
  for (const auto& P : src)
    if (!chain_contains(c1, P)) fail(Err::PointsNotOnChain, "source point not on its chain");
  for (const auto& P : dst)
    if (!chain_contains(c2, P)) fail(Err::PointsNotOnChain, "target point not on its chain");
  if (src[0] == src[1] || src[0] == src[2] || src[1] == src[2] || dst[0] == dst[1] ||
      dst[0] == dst[2] || dst[1] == dst[2])
    fail(Err::PointsNotOnChain, "triples must consist of distinct points");

  RingProjectivity w1i = inverse(tw, c1.witness);
  std::array<FieldPoint, 3> ps, pd;
  for (unsigned i = 0; i < 3; ++i) {
    auto s = preimage_in_standard_chain(tw, apply_projectivity(tw, src[i], w1i));
    auto d = preimage_in_standard_chain(
        tw, apply_projectivity(tw, dst[i], inverse(tw, c2.witness)));
    if (!s || !d) fail(Err::PointsNotOnChain, "witness pullback left the standard chain");
    ps[i] = *s;
    pd[i] = *d;
  }
  auto m = pgl2_map_triples(tw, ps, pd);
  RingProjectivity mid = make_projectivity(tw, rho(tw, m[0]), rho(tw, m[1]), rho(tw, m[2]),
                                           rho(tw, m[3]));
  return compose(tw, compose(tw, w1i, mid), c2.witness);
}

std::uint64_t gaussian_binomial(unsigned n, unsigned k, std::uint64_t q) {
  // prod_{i<k} (q^(n-i)-1)/(q^(i+1)-1), computed as an exact integer
  unsigned __int128 num = 1, den = 1;
  auto qp = [&](unsigned m) {
    unsigned __int128 v = 1;
    for (unsigned i = 0; i < m; ++i) v *= q;
    return v;
  };
  for (unsigned i = 0; i < k; ++i) {
    num *= qp(n - i) - 1;
    den *= qp(i + 1) - 1;
  }
  return std::uint64_t(num / den);
}

std::vector<RingPoint> enumerate_ring_points(const FieldTower& tw, std::uint64_t budget) {
  tw.require_ring_support();
  const unsigned t = tw.t(), w = 2 * tw.t();
  const std::uint64_t q = tw.q();
  std::uint64_t total = gaussian_binomial(w, t, q);
  if (total > budget) fail(Err::BudgetExceeded, "ring point count exceeds budget");

  std::vector<RingPoint> out;
  out.reserve(total);

  // pivot-column subsets in lexicographic order, then free entries in
  // counting order
  std::vector<unsigned> piv(t);
  for (unsigned i = 0; i < t; ++i) piv[i] = i;
  while (true) {
    // free positions: (r, c) with c > piv[r], c not a pivot column
    std::vector<std::pair<unsigned, unsigned>> freepos;
    std::vector<bool> is_piv(w, false);
    for (unsigned i = 0; i < t; ++i) is_piv[piv[i]] = true;
    for (unsigned r = 0; r < t; ++r)
      for (unsigned c = piv[r] + 1; c < w; ++c)
        if (!is_piv[c]) freepos.push_back({r, c});

    std::vector<unsigned> vals(freepos.size(), 0);
    while (true) {
      PackedMat m;
      m.nrows = std::uint8_t(t);
      m.ncols = std::uint8_t(w);
      for (unsigned i = 0; i < t; ++i) m.set_digit(i, piv[i], 1);
      for (std::size_t i = 0; i < freepos.size(); ++i)
        m.set_digit(freepos[i].first, freepos[i].second, vals[i]);
      out.push_back({m});
      // increment vals
      std::size_t i = 0;
      for (; i < vals.size(); ++i) {
        if (++vals[i] < q) break;
        vals[i] = 0;
      }
      if (i == vals.size()) break;
    }

    // next pivot subset (lexicographic successor of a k-subset of [0,w))
    int j = int(t) - 1;
    while (j >= 0 && piv[j] == w - t + j) --j;
    if (j < 0) break;
    ++piv[j];
    for (unsigned i = unsigned(j) + 1; i < t; ++i) piv[i] = piv[i - 1] + 1;
  }
  return out;
}

std::string encode_ring_point(const FieldTower& tw, const RingPoint& P) {
  std::string s;
  for (unsigned i = 0; i < tw.t(); ++i) {
    if (i) s += '/';
    for (unsigned c = 0; c < 2 * tw.t(); ++c) {
      unsigned d = P.m.digit(i, c);
      s += d < 10 ? char('0' + d) : char('a' + d - 10);
    }
  }
  return s;
}

RingPoint parse_ring_point(const FieldTower& tw, std::string_view s) {
  const unsigned t = tw.t(), w = 2 * tw.t();
  PackedMat m;
  m.nrows = std::uint8_t(t);
  m.ncols = std::uint8_t(w);
  unsigned r = 0, c = 0;
  for (char ch : s) {
    if (ch == '/' || ch == '\n') {
      if (c != w) fail(Err::BadEncoding, "ring point row has wrong width");
      ++r;
      c = 0;
      continue;
    }
    unsigned d;
    if (ch >= '0' && ch <= '9')
      d = unsigned(ch - '0');
    else if (ch >= 'a' && ch <= 'f')
      d = unsigned(ch - 'a' + 10);
    else
      fail(Err::BadEncoding, "bad ring point digit");
    if (r >= t || c >= w || d >= tw.q()) fail(Err::BadEncoding, "ring point digit out of range");
    m.set_digit(r, c, d);
    ++c;
  }
  if (r != t - 1 || c != w) fail(Err::BadEncoding, "ring point needs t rows of 2t digits");
  return ring_point_from_mat(tw, m);
}

Row normalize_pg_point(const FieldTower& tw, Row v) {
  const RowOps& ops = tw.rows();
  for (unsigned c = 0; c < kMaxLanes; ++c) {
    unsigned d = row_digit(v, c);
    if (d == 0) continue;
    if (d != 1) v = ops.scale(v, ops.fq_inv(d));
    return v;
  }
  fail(Err::InvalidArgument, "zero vector is not a projective point");
}

std::vector<Row> span_points(const FieldTower& tw, const PackedMat& m) {
  const RowOps& ops = tw.rows();
  const unsigned n = m.nrows;
  const std::uint64_t q = tw.q();
  std::vector<Row> out;
  // coefficient vectors with leading coefficient 1: one per projective point
  std::vector<unsigned> coef(n, 0);
  for (unsigned lead = 0; lead < n; ++lead) {
    std::fill(coef.begin(), coef.end(), 0);
    coef[lead] = 1;
    while (true) {
      Row v = m.row[lead];
      for (unsigned i = lead + 1; i < n; ++i)
        if (coef[i]) v = ops.add(v, ops.scale(m.row[i], coef[i]));
      out.push_back(normalize_pg_point(tw, v));
      unsigned i = lead + 1;
      for (; i < n; ++i) {
        if (++coef[i] < q) break;
        coef[i] = 0;
      }
      if (i == n) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Row> subspace_points(const FieldTower& tw, const RingPoint& P) {
  return span_points(tw, P.m);
}

bool point_in_span(const FieldTower& tw, Row v, const PackedMat& m) {
  const RowOps& ops = tw.rows();
  // eliminate v against the RREF rows
  for (unsigned i = 0; i < m.nrows; ++i) {
    Row r = m.row[i];
    for (unsigned c = 0; c < m.ncols; ++c) {
      if (row_digit(r, c) != 0) {
        unsigned d = row_digit(v, c);
        if (d) v = ops.add(v, ops.scale(r, ops.fq_neg(d)));
        break;
      }
    }
  }
  return v == 0;
}

bool point_in_subspace(const FieldTower& tw, Row v, const RingPoint& P) {
  return point_in_span(tw, v, P.m);
}

ProjLine line_through(const FieldTower& tw, Row u, Row v, unsigned width) {
  PackedMat m;
  m.nrows = 2;
  m.ncols = std::uint8_t(width);
  m.row[0] = u;
  m.row[1] = v;
  if (rref(m, tw.rows()) != 2) fail(Err::InvalidArgument, "points do not span a line");
  return {m};
}

std::vector<Row> line_points(const FieldTower& tw, const ProjLine& y) {
  const RowOps& ops = tw.rows();
  std::vector<Row> out;
  out.reserve(tw.q() + 1);
  out.push_back(normalize_pg_point(tw, y.m.row[0]));
  for (std::uint64_t lam = 0; lam < tw.q(); ++lam)
    out.push_back(normalize_pg_point(tw, ops.add(y.m.row[1], ops.scale(y.m.row[0], unsigned(lam)))));
  std::sort(out.begin(), out.end());
  return out;
}

bool point_on_line(const FieldTower& tw, Row v, const ProjLine& y) {
  return point_in_span(tw, v, y.m);
}

std::vector<ProjLine> lines_among(const FieldTower& tw, const std::vector<Row>& pts, unsigned width) {
  std::vector<ProjLine> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      out.push_back(line_through(tw, pts[i], pts[j], width));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace linset
