#pragma once

// The ring E of F_q-linear endomorphisms of F_{q^t}. An endomorphism is kept
// as the t x t matrix over F_q of its action on the basis (1, y, ..., y^{t-1}),
// row i = coordinates of the image of y^i. Maps are written as exponents, so
// composition reads left to right and x^(ab) = (x^a)^b corresponds to the
// matrix product Ma * Mb under the row-vector convention.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "linset/fields.hpp"
#include "linset/packed.hpp"

namespace linset {

struct Endo {
  PackedMat m;  // t x t over F_q
  friend bool operator==(const Endo&, const Endo&) = default;
};

Endo endo_zero(const FieldTower& tw);
Endo endo_identity(const FieldTower& tw);
Endo endo_from_mat(const FieldTower& tw, const PackedMat& m);

/// x -> a*x.
Endo rho(const FieldTower& tw, FqtElem a);
/// x -> x^(q^i).
Endo frob_endo(const FieldTower& tw, unsigned i);
/// x -> sum_i c[i] * x^(q^i); c has exactly t entries.
Endo from_qpoly(const FieldTower& tw, const std::vector<FqtElem>& c);
/// Inverse of from_qpoly; every endomorphism has exactly one q-polynomial of
/// q-degree < t.
std::vector<FqtElem> to_qpoly(const FieldTower& tw, const Endo& a);

FqtElem endo_apply(const FieldTower& tw, const Endo& a, FqtElem x);

/// apply(compose(a,b), x) == apply(b, apply(a, x)).
Endo compose(const FieldTower& tw, const Endo& a, const Endo& b);
Endo endo_add(const FieldTower& tw, const Endo& a, const Endo& b);
Endo endo_sub(const FieldTower& tw, const Endo& a, const Endo& b);
Endo endo_invert(const FieldTower& tw, const Endo& a);  // SingularEndo
bool endo_is_invertible(const FieldTower& tw, const Endo& a);
unsigned kernel_dim(const FieldTower& tw, const Endo& a);

/// True iff some u != 0 has u^a = lambda*u.
bool has_eigenvalue(const FieldTower& tw, const Endo& a, FqtElem lambda);

// "Q:" + the q-polynomial coefficients in the field element encoding, joined
// by '/'. "M:" + the t matrix rows (entries in the F_q encoding, ';'-joined)
// joined by '/'. Both parse; Q is what gets emitted.
std::string encode_endo(const FieldTower& tw, const Endo& a);
Endo parse_endo(const FieldTower& tw, std::string_view s);

/// All q^(t^2) endomorphisms, matrix digits in row-major counting order.
std::vector<Endo> enumerate_endos(const FieldTower& tw);

}  // namespace linset
