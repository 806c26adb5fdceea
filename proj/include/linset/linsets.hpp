#pragma once

// Linear sets of rank t on PG(1,q^t) seen through PG(1,E): the linear set of a
// ring point, its embedded copy and scaling orbit, scatteredness, the union
// hypersurface with its two partitioning families of (t-1)-subspaces, reguli,
// and the reconstruction of the second family from the first.

#include <cstdint>
#include <vector>

#include "linset/ringline.hpp"

namespace linset {

struct LinearSet {
  std::vector<FieldPoint> points;  // sorted
  RingPoint source;
};

enum class FamilyTag { First, Second };

struct SubspaceFamily {
  std::vector<RingPoint> members;  // sorted
  FamilyTag tag;
};

/// B(T): the field points whose embedded image is non-distant from T.
LinearSet linear_set(const FieldTower& tw, const RingPoint& T);

bool is_scattered(const FieldTower& tw, const RingPoint& T);

/// The chain points non-distant from T (the embedded copy of linear_set).
std::vector<RingPoint> embedded_linear_set(const FieldTower& tw, const RingPoint& T);

/// Those same subspaces as a family (one spread member per linear set point).
SubspaceFamily first_family(const FieldTower& tw, const RingPoint& T);

/// The distinct scalings T*diag(rho_h, rho_h), h over F_{q^t}^*.
SubspaceFamily scaling_orbit(const FieldTower& tw, const RingPoint& T);

/// {u^beta / u : u in F_{q^t}^*}; u in the kernel contributes 0. Sorted.
std::vector<FqtElem> quotient_set(const FieldTower& tw, const Endo& beta);

/// Union of the point sets of the members, deduplicated and sorted.
std::vector<Row> hypersurface_points(const FieldTower& tw, const SubspaceFamily& fam);

/// Verifies that (h, u) -> h*(u, u^beta) embeds the product of PG(t-1,q) with
/// the subspace of T: images pairwise distinct and product lines map to lines.
/// T must be scattered and of the form E(1, beta).
bool product_embedding_check(const FieldTower& tw, const RingPoint& T);  // NotScattered

/// The q+1 family members meeting the line y, each in exactly one point, with
/// every point of y covered.
std::vector<RingPoint> regulus_of_line(const FieldTower& tw, const ProjLine& y,
                                       const SubspaceFamily& fam);  // NotTransversal

/// The unique second family through V of the product structure carried by
/// fam; with fam = first_family(T) and V = T this is scaling_orbit(T).
SubspaceFamily reconstruct_second_family(const FieldTower& tw, const SubspaceFamily& fam,
                                         const RingPoint& V);  // NoProductStructure

}  // namespace linset
