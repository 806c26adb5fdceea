#pragma once

// Exact arithmetic in the tower F_p < F_q = F_p[x]/(f) < F_{q^t} = F_q[y]/(g).
//
// Elements of F_q are integer indices in [0,q) encoding base-p digit vectors
// (little-endian, digit of x^0 first). Elements of F_{q^t} are indices in
// [0,q^t) encoding base-q coefficient vectors in the basis (1, y, ..., y^{t-1}).
// Moduli are chosen canonically: the monic irreducible polynomial whose
// non-leading coefficient tuple has the least integer encoding.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "linset/errors.hpp"
#include "linset/packed.hpp"

namespace linset {

struct FqtElem {
  std::uint64_t idx = 0;
  friend auto operator<=>(const FqtElem&, const FqtElem&) = default;
};

class FieldTower {
 public:
  // Builds the tower, verifying p prime, e >= 1, t >= 2 and p^(e*t) < 2^62.
  static FieldTower make(unsigned p, unsigned e, unsigned t);

  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  unsigned t() const { return t_; }
  std::uint64_t q() const { return q_; }
  std::uint64_t qt() const { return qt_; }
  /// (q^t - 1)/(q - 1), the point count of PG(t-1, q).
  std::uint64_t theta_top() const { return theta_; }

  const std::vector<std::uint64_t>& f_coeffs() const { return f_; }  // over F_p, degree e
  const std::vector<std::uint64_t>& g_coeffs() const { return g_; }  // over F_q, degree t

  // --- F_q level -----------------------------------------------------------
  std::uint64_t fq_add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t fq_sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t fq_neg(std::uint64_t a) const;
  std::uint64_t fq_mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t fq_inv(std::uint64_t a) const;

  // --- F_{q^t} level -------------------------------------------------------
  FqtElem zero() const { return {0}; }
  FqtElem one() const { return {1}; }
  FqtElem gen() const { return {q_}; }  // the element y
  FqtElem elem(std::uint64_t idx) const;

  FqtElem add(FqtElem a, FqtElem b) const;
  FqtElem sub(FqtElem a, FqtElem b) const;
  FqtElem neg(FqtElem a) const;
  FqtElem mul(FqtElem a, FqtElem b) const;
  FqtElem inv(FqtElem a) const;
  FqtElem pow(FqtElem a, std::uint64_t k) const;
  /// a^(q^i); i may be any integer, reduced mod t.
  FqtElem frobenius(FqtElem a, long i) const;
  /// a^theta, the norm down to F_q (0 for a = 0).
  FqtElem norm_to_base(FqtElem a) const;

  bool in_base(FqtElem a) const { return a.idx < q_; }
  std::uint64_t fq_coeff(FqtElem a, unsigned j) const;
  FqtElem from_fq(std::uint64_t c) const;
  FqtElem from_coeffs(const std::vector<std::uint64_t>& coeffs) const;
  FqtElem primitive_element() const { return {prim_}; }

  /// All q^t elements in increasing index order (0 first, 1 second).
  std::vector<FqtElem> enumerate_field() const;

  // --- packed-row bridge (requires t <= 4 and q <= 256) --------------------
  const RowOps& rows() const;
  void require_ring_support() const;
  bool has_ring_support() const { return q_ <= 256 && 2 * t_ <= kMaxLanes; }
  Row coords_row(FqtElem a) const;
  FqtElem from_coords_row(Row r) const;

  // --- text encoding -------------------------------------------------------
  // Base-p digits of each F_q coefficient joined by ',', coefficients joined
  // by ';', little-endian. In F_8: "1;0;1" is 1 + y^2.
  std::string encode(FqtElem a) const;
  FqtElem parse_elem(std::string_view s) const;
  std::string encode_fq(std::uint64_t c) const;
  std::uint64_t parse_fq(std::string_view s) const;

 private:
  FieldTower() = default;
  void build_fq_tables();
  void build_log_tables();
  std::uint64_t fq_mul_generic(std::uint64_t a, std::uint64_t b) const;
  FqtElem mul_generic(FqtElem a, FqtElem b) const;

  unsigned p_ = 0, e_ = 0, t_ = 0;
  std::uint64_t q_ = 0, qt_ = 0, theta_ = 0, prim_ = 0;
  std::vector<std::uint64_t> f_, g_;
  std::vector<std::uint64_t> q_pow_;     // q^j for j <= t
  std::vector<std::uint64_t> frob_exp_;  // q^i mod (qt-1)

  bool small_q_ = false;
  std::vector<std::uint8_t> fq_add_, fq_mul_, fq_inv_, fq_neg_;

  bool has_logs_ = false;
  std::vector<std::uint32_t> exp_, log_;

  RowOps row_ops_;
};

bool is_prime(std::uint64_t n);

/// theta_n = (q^{n+1} - 1)/(q - 1) = number of points of PG(n, q).
std::uint64_t theta(unsigned n, std::uint64_t q);

}  // namespace linset
