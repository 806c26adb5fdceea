#include "linset/linsets.hpp"

#include <algorithm>

namespace linset {

LinearSet linear_set(const FieldTower& tw, const RingPoint& T) {
  LinearSet L;
  L.source = T;
  for (const FieldPoint& P : enumerate_field_points(tw))
    if (!is_distant(tw, embed_field_point(tw, P), T)) L.points.push_back(P);
  std::sort(L.points.begin(), L.points.end());
  return L;
}

bool is_scattered(const FieldTower& tw, const RingPoint& T) {
  return linear_set(tw, T).points.size() == tw.theta_top();
}

std::vector<RingPoint> embedded_linear_set(const FieldTower& tw, const RingPoint& T) {
  std::vector<RingPoint> out;
  for (const FieldPoint& P : linear_set(tw, T).points) out.push_back(embed_field_point(tw, P));
  std::sort(out.begin(), out.end());
  return out;
}

SubspaceFamily first_family(const FieldTower& tw, const RingPoint& T) {
  return {embedded_linear_set(tw, T), FamilyTag::First};
}

SubspaceFamily scaling_orbit(const FieldTower& tw, const RingPoint& T) {
  SubspaceFamily fam;
  fam.tag = FamilyTag::Second;
  for (std::uint64_t h = 1; h < tw.qt(); ++h)
    fam.members.push_back(scale_point(tw, T, tw.elem(h)));
  std::sort(fam.members.begin(), fam.members.end());
  fam.members.erase(std::unique(fam.members.begin(), fam.members.end()), fam.members.end());
  return fam;
}

std::vector<FqtElem> quotient_set(const FieldTower& tw, const Endo& beta) {
  std::vector<FqtElem> vals;
  for (std::uint64_t u = 1; u < tw.qt(); ++u) {
    FqtElem uu = tw.elem(u);
    vals.push_back(tw.mul(endo_apply(tw, beta, uu), tw.inv(uu)));
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

std::vector<Row> hypersurface_points(const FieldTower& tw, const SubspaceFamily& fam) {
  std::vector<Row> out;
  for (const RingPoint& m : fam.members) {
    auto pts = subspace_points(tw, m);
    out.insert(out.end(), pts.begin(), pts.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool product_embedding_check(const FieldTower& tw, const RingPoint& T) {
  if (!is_scattered(tw, T)) fail(Err::NotScattered, "product embedding needs a scattered point");
  const unsigned t = tw.t(), w = 2 * t;

  // factor 1: PG(t-1,q), the scalars h; factor 2: the points of T's subspace
  PackedMat full = packed_identity(t);
  std::vector<Row> hs = span_points(tw, full);
  std::vector<Row> qs = subspace_points(tw, T);

  auto image = [&](Row h, Row u) {
    // (h, (v,w)) -> (h*v, h*w) with h, v, w in F_{q^t}
    FqtElem hf = tw.from_coords_row(h);
    Row lo = 0, hi = 0;
    for (unsigned c = 0; c < t; ++c) {
      lo = row_with_digit(lo, c, row_digit(u, c));
      hi = row_with_digit(hi, c, row_digit(u, t + c));
    }
    FqtElem v = tw.from_coords_row(lo), x = tw.from_coords_row(hi);
    Row out = tw.coords_row(tw.mul(hf, v)) | (tw.coords_row(tw.mul(hf, x)) << (8 * t));
    return normalize_pg_point(tw, out);
  };

  // injectivity
  std::vector<Row> images;
  images.reserve(hs.size() * qs.size());
  for (Row h : hs)
    for (Row u : qs) images.push_back(image(h, u));
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  if (images.size() != hs.size() * qs.size()) return false;

  auto is_line = [&](const std::vector<Row>& pts) {
    if (pts.size() != tw.q() + 1) return false;
    ProjLine y = line_through(tw, pts[0], pts[1], w);
    for (Row v : pts)
      if (!point_on_line(tw, v, y)) return false;
    return true;
  };

  // a line in either factor, paired with a point of the other one, must map
  // to a line of PG(2t-1,q)
  for (const ProjLine& l2 : lines_among(tw, qs, w)) {
    std::vector<Row> onl2;
    for (Row u : qs)
      if (point_on_line(tw, u, l2)) onl2.push_back(u);
    for (Row h : hs) {
      std::vector<Row> img;
      for (Row u : onl2) img.push_back(image(h, u));
      std::sort(img.begin(), img.end());
      img.erase(std::unique(img.begin(), img.end()), img.end());
      if (!is_line(img)) return false;
    }
  }
  for (const ProjLine& l1 : lines_among(tw, hs, t)) {
    std::vector<Row> onl1;
    for (Row h : hs)
      if (point_on_line(tw, h, l1)) onl1.push_back(h);
    for (Row u : qs) {
      std::vector<Row> img;
      for (Row h : onl1) img.push_back(image(h, u));
      std::sort(img.begin(), img.end());
      img.erase(std::unique(img.begin(), img.end()), img.end());
      if (!is_line(img)) return false;
    }
  }
  return true;
}

std::vector<RingPoint> regulus_of_line(const FieldTower& tw, const ProjLine& y,
                                       const SubspaceFamily& fam) {
  std::vector<RingPoint> members;
  for (Row v : line_points(tw, y)) {
    const RingPoint* on = nullptr;
    for (const RingPoint& m : fam.members) {
      if (point_in_subspace(tw, v, m)) {
        if (on) fail(Err::NotTransversal, "a line point lies on two family members");
        on = &m;
      }
    }
    if (!on) fail(Err::NotTransversal, "a line point lies on no family member");
    members.push_back(*on);
  }
  std::sort(members.begin(), members.end());
  auto last = std::unique(members.begin(), members.end());
  if (std::uint64_t(last - members.begin()) != tw.q() + 1)
    fail(Err::NotTransversal, "some family member meets the line twice");
  members.erase(last, members.end());
  return members;
}

namespace {

// Unique transversal of the regulus through the point x (x on one member):
// the line through x meeting every regulus member in exactly one point.
std::vector<Row> transversal_through(const FieldTower& tw, const std::vector<RingPoint>& regulus,
                                     Row x) {
  const unsigned w = 2 * tw.t();
  const RingPoint* home = nullptr;
  for (const RingPoint& m : regulus)
    if (point_in_subspace(tw, x, m)) home = &m;
  if (!home) fail(Err::NoProductStructure, "point is on no regulus member");

  const RingPoint* other = nullptr;
  for (const RingPoint& m : regulus)
    if (!(m == *home)) {
      other = &m;
      break;
    }

  std::vector<std::vector<Row>> candidates;
  for (Row z : subspace_points(tw, *other)) {
    ProjLine l = line_through(tw, x, z, w);
    auto pts = line_points(tw, l);
    bool ok = true;
    for (const RingPoint& m : regulus) {
      unsigned hits = 0;
      for (Row v : pts) hits += point_in_subspace(tw, v, m) ? 1 : 0;
      if (hits != 1) {
        ok = false;
        break;
      }
    }
    if (ok) candidates.push_back(pts);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  if (candidates.size() != 1)
    fail(Err::NoProductStructure, "transversal through point is not unique");
  return candidates.front();
}

}  // namespace

SubspaceFamily reconstruct_second_family(const FieldTower& tw, const SubspaceFamily& fam,
                                         const RingPoint& V) {
  const unsigned t = tw.t(), w = 2 * t;
  // V must meet every member in exactly one point
  std::vector<Row> vpts = subspace_points(tw, V);
  for (const RingPoint& m : fam.members) {
    unsigned hits = 0;
    for (Row v : vpts) hits += point_in_subspace(tw, v, m) ? 1 : 0;
    if (hits != 1) fail(Err::NoProductStructure, "seed subspace must meet every member once");
  }

  std::vector<Row> hyper = hypersurface_points(tw, fam);
  std::vector<RingPoint> members{V};

  for (Row x : hyper) {
    bool covered = false;
    for (const RingPoint& m : members)
      if (point_in_subspace(tw, x, m)) {
        covered = true;
        break;
      }
    if (covered) continue;

    const RingPoint* mx = nullptr;
    for (const RingPoint& m : fam.members)
      if (point_in_subspace(tw, x, m)) {
        if (mx) fail(Err::NoProductStructure, "family members are not pairwise disjoint");
        mx = &m;
      }
    if (!mx) fail(Err::NoProductStructure, "hypersurface point on no family member");
    Row p0 = 0;
    for (Row v : vpts)
      if (point_in_subspace(tw, v, *mx)) p0 = v;

    // union of the transversals through x, over the lines of V through p0
    std::vector<Row> collected;
    for (Row v : vpts) {
      if (v == p0) continue;
      ProjLine y = line_through(tw, p0, v, w);
      // visit each line of V through p0 once: when v is its least non-p0 point
      bool least = true;
      for (Row z : line_points(tw, y))
        if (z != p0 && z < v) least = false;
      if (!least) continue;

      std::vector<RingPoint> reg;
      try {
        reg = regulus_of_line(tw, y, fam);
      } catch (const LinsetError&) {
        fail(Err::NoProductStructure, "line of the seed subspace is not transversal");
      }
      auto tr = transversal_through(tw, reg, x);
      collected.insert(collected.end(), tr.begin(), tr.end());
    }
    std::sort(collected.begin(), collected.end());
    collected.erase(std::unique(collected.begin(), collected.end()), collected.end());
    if (collected.size() != tw.theta_top())
      fail(Err::NoProductStructure, "collected points do not fill a (t-1)-subspace");

    // rank-t basis from the collected points
    PackedMat basis;
    basis.ncols = std::uint8_t(w);
    for (Row v : collected) {
      if (basis.nrows == t) break;
      basis.row[basis.nrows] = v;
      PackedMat probe = basis;
      probe.nrows = std::uint8_t(basis.nrows + 1);
      if (rank_of(probe, tw.rows()) == unsigned(basis.nrows) + 1) basis.nrows++;
    }
    if (basis.nrows != t) fail(Err::NoProductStructure, "collected points span the wrong rank");
    RingPoint member = ring_point_from_mat(tw, basis);
    for (Row v : collected)
      if (!point_in_subspace(tw, v, member))
        fail(Err::NoProductStructure, "collected points are not a subspace");
    members.push_back(member);
  }

  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  // the members must partition the hypersurface
  std::vector<Row> unionpts;
  for (const RingPoint& m : members) {
    auto pts = subspace_points(tw, m);
    unionpts.insert(unionpts.end(), pts.begin(), pts.end());
  }
  std::sort(unionpts.begin(), unionpts.end());
  if (std::adjacent_find(unionpts.begin(), unionpts.end()) != unionpts.end())
    fail(Err::NoProductStructure, "reconstructed members overlap");
  if (unionpts != hyper)
    fail(Err::NoProductStructure, "reconstructed family misses the hypersurface");

  return {members, FamilyTag::Second};
}

}  // namespace linset
