#include "linset/fields.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace linset {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t theta(unsigned n, std::uint64_t q) {
  std::uint64_t acc = 0, pw = 1;
  for (unsigned i = 0; i <= n; ++i) {
    acc += pw;
    pw *= q;
  }
  return acc;
}

namespace {

// Polynomial helpers over an abstract coefficient field, used for modulus
// search at construction time. Polynomials are little-endian coefficient
// vectors with no trailing zeros.
using Poly = std::vector<std::uint64_t>;

template <class F>
void poly_trim(const F&, Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

template <class F>
Poly poly_mul(const F& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
  }
  poly_trim(f, c);
  return c;
}

// Remainder of a modulo monic m.
template <class F>
Poly poly_mod(const F& f, Poly a, const Poly& m) {
  poly_trim(f, a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    std::uint64_t lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    if (lead != 0) {
      for (std::size_t i = 0; i <= dm; ++i)
        a[shift + i] = f.sub(a[shift + i], f.mul(lead, m[i]));
    }
    a.pop_back();
    poly_trim(f, a);
    if (a.size() <= dm) break;
  }
  return a;
}

template <class F>
Poly poly_gcd(const F& f, Poly a, Poly b) {
  poly_trim(f, a);
  poly_trim(f, b);
  while (!b.empty()) {
    // make b monic so poly_mod applies
    std::uint64_t lead = b.back();
    if (lead != 1) {
      std::uint64_t il = f.inv(lead);
      for (auto& c : b) c = f.mul(c, il);
    }
    Poly r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

template <class F>
Poly poly_mulmod(const F& f, const Poly& a, const Poly& b, const Poly& m) {
  return poly_mod(f, poly_mul(f, a, b), m);
}

template <class F>
Poly poly_powmod(const F& f, Poly base, std::uint64_t exp, const Poly& m) {
  Poly r = {1};
  base = poly_mod(f, std::move(base), m);
  while (exp) {
    if (exp & 1) r = poly_mulmod(f, r, base, m);
    base = poly_mulmod(f, base, base, m);
    exp >>= 1;
  }
  return r;
}

// x^(q^k) mod m via k rounds of q-th powering.
template <class F>
Poly poly_x_qk(const F& f, unsigned k, const Poly& m) {
  Poly x = poly_mod(f, Poly{0, 1}, m);
  for (unsigned i = 0; i < k; ++i) x = poly_powmod(f, x, f.q, m);
  return x;
}

// Rabin's criterion: m (monic, degree n) is irreducible over F_q iff
// x^(q^n) = x mod m and gcd(x^(q^(n/r)) - x, m) is constant for each prime
// r | n.
template <class F>
bool poly_irreducible(const F& f, const Poly& m) {
  const unsigned n = unsigned(m.size() - 1);
  if (n == 0) return false;
  if (n == 1) return true;
  Poly xq = poly_x_qk(f, n, m);
  Poly x = poly_mod(f, Poly{0, 1}, m);
  if (xq != x) return false;
  unsigned rest = n;
  for (unsigned r = 2; r * r <= n; ++r) {
    if (rest % r) continue;
    while (rest % r == 0) rest /= r;
    Poly v = poly_x_qk(f, n / r, m);
    // v - x
    Poly diff = v;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = f.sub(diff[1], 1);
    poly_trim(f, diff);
    if (poly_gcd(f, m, diff).size() > 1) return false;
  }
  if (rest > 1 && rest < n) {
    Poly v = poly_x_qk(f, n / rest, m);
    Poly diff = v;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = f.sub(diff[1], 1);
    poly_trim(f, diff);
    if (poly_gcd(f, m, diff).size() > 1) return false;
  }
  return true;
}

// Monic irreducible of the given degree whose non-leading coefficient tuple
// has the least base-q integer encoding.
template <class F>
Poly least_irreducible(const F& f, unsigned degree) {
  Poly m(degree + 1, 0);
  m[degree] = 1;
  for (std::uint64_t v = 0;; ++v) {
    std::uint64_t rest = v;
    for (unsigned i = 0; i < degree; ++i) {
      m[i] = rest % f.q;
      rest /= f.q;
    }
    if (rest != 0) fail(Err::DegreeOutOfRange, "no irreducible modulus found in range");
    if (poly_irreducible(f, m)) return m;
  }
}

struct PrimeField {
  std::uint64_t q;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % q; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + q - b) % q; }
  std::uint64_t neg(std::uint64_t a) const { return a ? q - a : 0; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % q; }
  std::uint64_t inv(std::uint64_t a) const {
    std::uint64_t r = 1, b = a, e = q - 2;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
};

// F_q = F_p[x]/(f) with elements as base-p digit indices; table-free.
struct MidField {
  std::uint64_t p, q;
  const std::vector<std::uint64_t>* f;  // monic, degree e

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t out = 0, pw = 1;
    while (a || b) {
      out += ((a % p + b % p) % p) * pw;
      a /= p;
      b /= p;
      pw *= p;
    }
    return out;
  }
  std::uint64_t neg(std::uint64_t a) const {
    std::uint64_t out = 0, pw = 1;
    while (a) {
      std::uint64_t d = a % p;
      out += (d ? p - d : 0) * pw;
      a /= p;
      pw *= p;
    }
    return out;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    PrimeField fp{p};
    Poly pa, pb;
    for (std::uint64_t x = a; x; x /= p) pa.push_back(x % p);
    for (std::uint64_t x = b; x; x /= p) pb.push_back(x % p);
    Poly c = poly_mod(fp, poly_mul(fp, pa, pb), *f);
    std::uint64_t out = 0, pw = 1;
    for (std::uint64_t d : c) {
      out += d * pw;
      pw *= p;
    }
    return out;
  }
  std::uint64_t inv(std::uint64_t a) const {
    if (a == 0) fail(Err::DivisionByZero, "inverse of 0 in F_q");
    std::uint64_t r = 1, b = a, e = q - 2;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
};

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> fs;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

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

std::uint64_t parse_digit(std::string_view s, std::uint64_t bound) {
  if (s.empty()) fail(Err::BadEncoding, "empty digit");
  std::uint64_t v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') fail(Err::BadEncoding, "non-numeric digit");
    v = v * 10 + std::uint64_t(ch - '0');
    if (v >= bound && bound > 0) fail(Err::BadEncoding, "digit out of range");
  }
  return v;
}

}  // namespace

FieldTower FieldTower::make(unsigned p, unsigned e, unsigned t) {
  if (!is_prime(p)) fail(Err::NonPrimeCharacteristic, "p must be prime (F_{p^e} is requested via e)");
  if (e < 1 || t < 2) fail(Err::DegreeOutOfRange, "need e >= 1 and t >= 2");
  // index arithmetic and table budgets need q^t < 2^62
  if (std::uint64_t(e) * t > 64) fail(Err::DegreeOutOfRange, "e*t too large for exact tables");
  long double size = 1.0L;
  for (unsigned i = 0; i < std::uint64_t(e) * t; ++i) {
    size *= p;
    if (size > 4.6e18L) fail(Err::DegreeOutOfRange, "q^t exceeds the 2^62 index range");
  }

  FieldTower tw;
  tw.p_ = p;
  tw.e_ = e;
  tw.t_ = t;

  PrimeField fp{p};
  tw.f_ = least_irreducible(fp, e);

  tw.q_ = 1;
  for (unsigned i = 0; i < e; ++i) tw.q_ *= p;
  tw.qt_ = 1;
  for (unsigned i = 0; i < t; ++i) tw.qt_ *= tw.q_;
  tw.theta_ = (tw.qt_ - 1) / (tw.q_ - 1);

  tw.q_pow_.resize(t + 1);
  tw.q_pow_[0] = 1;
  for (unsigned i = 1; i <= t; ++i) tw.q_pow_[i] = tw.q_pow_[i - 1] * tw.q_;

  tw.build_fq_tables();

  MidField fq{p, tw.q_, &tw.f_};
  tw.g_ = least_irreducible(fq, t);

  tw.frob_exp_.resize(t);
  for (unsigned i = 0; i < t; ++i) {
    std::uint64_t v = 1;
    for (unsigned k = 0; k < i; ++k) v = (unsigned __int128)(v)*tw.q_ % (tw.qt_ - 1);
    tw.frob_exp_[i] = v;
  }

  tw.build_log_tables();
  return tw;
}

void FieldTower::build_fq_tables() {
  small_q_ = q_ <= 256;
  if (!small_q_) return;
  MidField fq{p_, q_, &f_};
  fq_add_.resize(q_ * q_);
  fq_mul_.resize(q_ * q_);
  fq_inv_.assign(q_, 0);
  fq_neg_.resize(q_);
  for (std::uint64_t a = 0; a < q_; ++a) {
    fq_neg_[a] = std::uint8_t(fq.neg(a));
    for (std::uint64_t b = 0; b < q_; ++b) {
      fq_add_[a * q_ + b] = std::uint8_t(fq.add(a, b));
      std::uint64_t m = fq.mul(a, b);
      fq_mul_[a * q_ + b] = std::uint8_t(m);
      if (m == 1) fq_inv_[a] = std::uint8_t(b);
    }
  }
  row_ops_ = RowOps(p_, unsigned(q_), fq_add_.data(), fq_mul_.data(), fq_inv_.data(), fq_neg_.data());
}

void FieldTower::build_log_tables() {
  // primitive element first (independent of the log tables)
  auto factors = prime_factors(qt_ - 1);
  for (std::uint64_t cand = 1; cand < qt_; ++cand) {
    FqtElem c{cand};
    if (c.idx == 0) continue;
    bool ok = true;
    for (std::uint64_t pf : factors) {
      FqtElem r{1};
      FqtElem b = c;
      std::uint64_t ex = (qt_ - 1) / pf;
      while (ex) {
        if (ex & 1) r = mul_generic(r, b);
        b = mul_generic(b, b);
        ex >>= 1;
      }
      if (r.idx == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      prim_ = cand;
      break;
    }
  }

  if (qt_ > (1u << 20)) return;
  exp_.resize(2 * (qt_ - 1));
  log_.assign(qt_, 0);
  FqtElem acc{1};
  for (std::uint64_t k = 0; k < qt_ - 1; ++k) {
    exp_[k] = std::uint32_t(acc.idx);
    exp_[k + (qt_ - 1)] = std::uint32_t(acc.idx);
    log_[acc.idx] = std::uint32_t(k);
    acc = mul_generic(acc, FqtElem{prim_});
  }
  has_logs_ = true;
}

std::uint64_t FieldTower::fq_add(std::uint64_t a, std::uint64_t b) const {
  if (small_q_) return fq_add_[a * q_ + b];
  return MidField{p_, q_, &f_}.add(a, b);
}

std::uint64_t FieldTower::fq_sub(std::uint64_t a, std::uint64_t b) const {
  return fq_add(a, fq_neg(b));
}

std::uint64_t FieldTower::fq_neg(std::uint64_t a) const {
  if (small_q_) return fq_neg_[a];
  return MidField{p_, q_, &f_}.neg(a);
}

std::uint64_t FieldTower::fq_mul(std::uint64_t a, std::uint64_t b) const {
  if (small_q_) return fq_mul_[a * q_ + b];
  return fq_mul_generic(a, b);
}

std::uint64_t FieldTower::fq_mul_generic(std::uint64_t a, std::uint64_t b) const {
  return MidField{p_, q_, &f_}.mul(a, b);
}

std::uint64_t FieldTower::fq_inv(std::uint64_t a) const {
  if (a == 0) fail(Err::DivisionByZero, "inverse of 0 in F_q");
  if (small_q_) return fq_inv_[a];
  return MidField{p_, q_, &f_}.inv(a);
}

FqtElem FieldTower::elem(std::uint64_t idx) const {
  if (idx >= qt_) fail(Err::InvalidArgument, "element index out of range");
  return {idx};
}

FqtElem FieldTower::add(FqtElem a, FqtElem b) const {
  std::uint64_t out = 0;
  for (unsigned j = 0; j < t_; ++j) {
    std::uint64_t ca = (a.idx / q_pow_[j]) % q_;
    std::uint64_t cb = (b.idx / q_pow_[j]) % q_;
    out += fq_add(ca, cb) * q_pow_[j];
  }
  return {out};
}

FqtElem FieldTower::neg(FqtElem a) const {
  std::uint64_t out = 0;
  for (unsigned j = 0; j < t_; ++j) {
    std::uint64_t ca = (a.idx / q_pow_[j]) % q_;
    out += fq_neg(ca) * q_pow_[j];
  }
  return {out};
}

FqtElem FieldTower::sub(FqtElem a, FqtElem b) const { return add(a, neg(b)); }

FqtElem FieldTower::mul(FqtElem a, FqtElem b) const {
  if (a.idx == 0 || b.idx == 0) return {0};
  if (has_logs_) return {exp_[log_[a.idx] + log_[b.idx]]};
  return mul_generic(a, b);
}

FqtElem FieldTower::mul_generic(FqtElem a, FqtElem b) const {
  // schoolbook product of the coefficient polynomials, reduced by g
  std::vector<std::uint64_t> pa(t_), pb(t_), c(2 * t_ - 1, 0);
  for (unsigned j = 0; j < t_; ++j) {
    pa[j] = (a.idx / q_pow_[j]) % q_;
    pb[j] = (b.idx / q_pow_[j]) % q_;
  }
  for (unsigned i = 0; i < t_; ++i) {
    if (pa[i] == 0) continue;
    for (unsigned j = 0; j < t_; ++j)
      if (pb[j]) c[i + j] = fq_add(c[i + j], fq_mul(pa[i], pb[j]));
  }
  for (unsigned d = 2 * t_ - 2; d >= t_; --d) {
    std::uint64_t lead = c[d];
    if (lead) {
      for (unsigned i = 0; i < t_; ++i)
        c[d - t_ + i] = fq_sub(c[d - t_ + i], fq_mul(lead, g_[i]));
    }
    c[d] = 0;
    if (d == t_) break;
  }
  std::uint64_t out = 0;
  for (unsigned j = 0; j < t_; ++j) out += c[j] * q_pow_[j];
  return {out};
}

FqtElem FieldTower::inv(FqtElem a) const {
  if (a.idx == 0) fail(Err::DivisionByZero, "inverse of 0 in F_{q^t}");
  if (has_logs_) return {exp_[(qt_ - 1) - log_[a.idx]]};
  return pow(a, qt_ - 2);
}

FqtElem FieldTower::pow(FqtElem a, std::uint64_t k) const {
  if (a.idx == 0) return k == 0 ? one() : zero();
  if (has_logs_) {
    std::uint64_t l = (unsigned __int128)(log_[a.idx]) * (k % (qt_ - 1)) % (qt_ - 1);
    return {exp_[l]};
  }
  FqtElem r{1}, b = a;
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

FqtElem FieldTower::frobenius(FqtElem a, long i) const {
  long m = i % long(t_);
  if (m < 0) m += t_;
  if (m == 0 || a.idx == 0) return a;
  if (has_logs_) {
    std::uint64_t l = (unsigned __int128)(log_[a.idx]) * frob_exp_[m] % (qt_ - 1);
    return {exp_[l]};
  }
  FqtElem r = a;
  for (long k = 0; k < m; ++k) r = pow(r, q_);
  return r;
}

FqtElem FieldTower::norm_to_base(FqtElem a) const {
  if (a.idx == 0) return zero();
  return pow(a, theta_);
}

std::uint64_t FieldTower::fq_coeff(FqtElem a, unsigned j) const {
  return (a.idx / q_pow_[j]) % q_;
}

FqtElem FieldTower::from_fq(std::uint64_t c) const {
  if (c >= q_) fail(Err::InvalidArgument, "F_q index out of range");
  return {c};
}

FqtElem FieldTower::from_coeffs(const std::vector<std::uint64_t>& coeffs) const {
  if (coeffs.size() != t_) fail(Err::InvalidArgument, "need exactly t coefficients");
  std::uint64_t out = 0;
  for (unsigned j = 0; j < t_; ++j) {
    if (coeffs[j] >= q_) fail(Err::InvalidArgument, "F_q coefficient out of range");
    out += coeffs[j] * q_pow_[j];
  }
  return {out};
}

std::vector<FqtElem> FieldTower::enumerate_field() const {
  if (qt_ > (1u << 22)) fail(Err::BudgetExceeded, "field too large to enumerate");
  std::vector<FqtElem> out;
  out.reserve(qt_);
  for (std::uint64_t i = 0; i < qt_; ++i) out.push_back({i});
  return out;
}

const RowOps& FieldTower::rows() const {
  require_ring_support();
  return row_ops_;
}

void FieldTower::require_ring_support() const {
  if (!has_ring_support())
    fail(Err::BudgetExceeded, "ring-line layer supports q <= 256 and t <= 4");
}

Row FieldTower::coords_row(FqtElem a) const {
  Row r = 0;
  for (unsigned j = 0; j < t_; ++j) r |= Row(fq_coeff(a, j)) << (8 * j);
  return r;
}

FqtElem FieldTower::from_coords_row(Row r) const {
  std::uint64_t out = 0;
  for (unsigned j = 0; j < t_; ++j) out += std::uint64_t(row_digit(r, j)) * q_pow_[j];
  return {out};
}

std::string FieldTower::encode_fq(std::uint64_t c) const {
  std::string s;
  std::uint64_t rest = c;
  for (unsigned i = 0; i < e_; ++i) {
    if (i) s += ',';
    s += std::to_string(rest % p_);
    rest /= p_;
  }
  return s;
}

std::uint64_t FieldTower::parse_fq(std::string_view s) const {
  auto digits = split_view(s, ',');
  if (digits.size() != e_) fail(Err::BadEncoding, "expected e base-p digits");
  std::uint64_t c = 0, pw = 1;
  for (auto d : digits) {
    c += parse_digit(d, p_) * pw;
    pw *= p_;
  }
  return c;
}

std::string FieldTower::encode(FqtElem a) const {
  std::string s;
  for (unsigned j = 0; j < t_; ++j) {
    if (j) s += ';';
    s += encode_fq(fq_coeff(a, j));
  }
  return s;
}

FqtElem FieldTower::parse_elem(std::string_view s) const {
  auto parts = split_view(s, ';');
  if (parts.size() != t_) fail(Err::BadEncoding, "expected t F_q coefficients");
  std::uint64_t out = 0;
  for (unsigned j = 0; j < t_; ++j) out += parse_fq(parts[j]) * q_pow_[j];
  return {out};
}

}  // namespace linset
