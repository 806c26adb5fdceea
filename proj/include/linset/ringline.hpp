#pragma once

// The projective lines PG(1,q^t) and PG(1,E). A point of PG(1,E) is stored as
// the reduced row echelon t x 2t matrix over F_q whose row space is
// {(u^alpha, u^beta)}; that matrix is literally the corresponding
// (t-1)-subspace of PG(2t-1,q), so point equality, the distant relation and
// collineation images are all plain linear algebra on packed rows.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "linset/endos.hpp"
#include "linset/fields.hpp"

namespace linset {

struct FieldPoint {
  FqtElem a, b;  // normalized: a = 1, or (a = 0 and b = 1)
  friend auto operator<=>(const FieldPoint&, const FieldPoint&) = default;
};

FieldPoint make_field_point(const FieldTower& tw, FqtElem a, FqtElem b);
std::string encode_field_point(const FieldTower& tw, const FieldPoint& P);
FieldPoint parse_field_point(const FieldTower& tw, std::string_view s);
/// All q^t + 1 points, (0:1) first then (1:b) by b index.
std::vector<FieldPoint> enumerate_field_points(const FieldTower& tw);
/// Dense index in [0, q^t]: (1:b) -> b, (0:1) -> q^t.
std::uint64_t field_point_index(const FieldTower& tw, const FieldPoint& P);

struct RingPoint {
  PackedMat m;  // t x 2t, RREF, rank t
  friend bool operator==(const RingPoint&, const RingPoint&) = default;
};
inline bool operator<(const RingPoint& a, const RingPoint& b) { return compare_mats(a.m, b.m) < 0; }

struct RingProjectivity {
  PackedMat m;  // 2t x 2t, invertible
  Endo block(const FieldTower& tw, unsigned i, unsigned j) const;
};

struct Chain {
  std::vector<RingPoint> points;  // sorted
  RingProjectivity witness;       // maps the standard chain onto this one
};

RingPoint ring_point(const FieldTower& tw, const Endo& alpha, const Endo& beta);  // NotAdmissible
RingPoint ring_point_from_mat(const FieldTower& tw, PackedMat m);                 // NotAdmissible

bool is_distant(const FieldTower& tw, const RingPoint& P, const RingPoint& Q);

RingPoint embed_field_point(const FieldTower& tw, const FieldPoint& P);
std::optional<FieldPoint> preimage_in_standard_chain(const FieldTower& tw, const RingPoint& P);

RingProjectivity make_projectivity(const FieldTower& tw, const Endo& a, const Endo& b,
                                   const Endo& c, const Endo& d);
RingProjectivity make_projectivity_mat(const FieldTower& tw, const PackedMat& m);
RingProjectivity projectivity_identity(const FieldTower& tw);
RingProjectivity compose(const FieldTower& tw, const RingProjectivity& a, const RingProjectivity& b);
RingProjectivity inverse(const FieldTower& tw, const RingProjectivity& a);
RingProjectivity random_projectivity(const FieldTower& tw, std::mt19937_64& rng);

RingPoint apply_projectivity(const FieldTower& tw, const RingPoint& P, const RingProjectivity& phi);

RingPoint scale_point(const FieldTower& tw, const RingPoint& T, FqtElem h);  // ZeroScalar

Chain standard_chain(const FieldTower& tw);
Chain chain_image(const FieldTower& tw, const Chain& c, const RingProjectivity& phi);
bool chain_contains(const Chain& c, const RingPoint& P);

/// The unique element of PGL_2(q^t) taking one ordered triple of distinct
/// field points to another, as a 2x2 matrix (row-major) acting on row vectors.
std::array<FqtElem, 4> pgl2_map_triples(const FieldTower& tw, const std::array<FieldPoint, 3>& src,
                                        const std::array<FieldPoint, 3>& dst);

/// Projectivity taking the first triple (on c1) to the second (on c2) and c1
/// onto c2, built through the unique 3-transitive map on the standard chain.
RingProjectivity map_triples_on_chains(const FieldTower& tw, const Chain& c1,
                                       const std::array<RingPoint, 3>& src, const Chain& c2,
                                       const std::array<RingPoint, 3>& dst);

std::uint64_t gaussian_binomial(unsigned n, unsigned k, std::uint64_t q);
/// Every rank-t RREF t x 2t matrix exactly once, deterministic order.
std::vector<RingPoint> enumerate_ring_points(const FieldTower& tw,
                                             std::uint64_t budget = 1u << 20);  // BudgetExceeded

std::string encode_ring_point(const FieldTower& tw, const RingPoint& P);
RingPoint parse_ring_point(const FieldTower& tw, std::string_view s);

// --- points and lines of PG(n-1, q) for n <= 8, as packed rows --------------

/// Scale so the first nonzero coordinate is 1; v must be nonzero.
Row normalize_pg_point(const FieldTower& tw, Row v);
/// The theta_{nrows-1} normalized points of the row space of m (rank nrows).
std::vector<Row> span_points(const FieldTower& tw, const PackedMat& m);
/// Same for a ring point's (t-1)-subspace.
std::vector<Row> subspace_points(const FieldTower& tw, const RingPoint& P);
bool point_in_span(const FieldTower& tw, Row v, const PackedMat& m);
bool point_in_subspace(const FieldTower& tw, Row v, const RingPoint& P);

struct ProjLine {
  PackedMat m;  // 2 x width, RREF, rank 2
  friend bool operator==(const ProjLine&, const ProjLine&) = default;
};
inline bool operator<(const ProjLine& a, const ProjLine& b) { return compare_mats(a.m, b.m) < 0; }

ProjLine line_through(const FieldTower& tw, Row u, Row v, unsigned width);
std::vector<Row> line_points(const FieldTower& tw, const ProjLine& y);
bool point_on_line(const FieldTower& tw, Row v, const ProjLine& y);
/// All lines spanned by pairs from the given points, deduplicated and sorted.
std::vector<ProjLine> lines_among(const FieldTower& tw, const std::vector<Row>& pts, unsigned width);

}  // namespace linset
