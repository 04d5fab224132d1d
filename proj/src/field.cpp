#include "whakit/field.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace wha {

namespace {

// ---- integer polynomial helpers for cyclotomic polynomial computation ----

using ZPoly = std::vector<mpz_class>;  // index = degree

// Exact division of integer polynomials, quotient must be integral.
ZPoly zpoly_divexact(ZPoly num, const ZPoly& den) {
  ZPoly q(num.size() - den.size() + 1, mpz_class(0));
  for (int i = (int)q.size() - 1; i >= 0; --i) {
    mpz_class lead = num[i + den.size() - 1];
    if (lead == 0) continue;
    mpz_class qi = lead / den.back();
    q[i] = qi;
    for (size_t j = 0; j < den.size(); ++j) num[i + j] -= qi * den[j];
  }
  for (const auto& r : num)
    if (r != 0) throw std::logic_error("zpoly_divexact: nonzero remainder");
  return q;
}

const ZPoly& cyclotomic_zpoly(int n) {
  static std::map<int, ZPoly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::function<const ZPoly&(int)> get = [&](int m) -> const ZPoly& {
    auto jt = cache.find(m);
    if (jt != cache.end()) return jt->second;
    ZPoly p(m + 1, mpz_class(0));  // x^m - 1
    p[0] = -1;
    p[m] = 1;
    for (int d = 1; d < m; ++d)
      if (m % d == 0) p = zpoly_divexact(std::move(p), get(d));
    return cache.emplace(m, std::move(p)).first->second;
  };
  return get(n);
}

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// ---- rational polynomial helpers (dense, coefficients mpq) ----

using QPoly = std::vector<mpq_class>;

QPoly qpoly_trim(QPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

// Extended Euclid: returns (g, u) with u*a = g mod m, g = gcd(a, m).
std::pair<QPoly, QPoly> qpoly_half_xgcd(QPoly a, QPoly m) {
  QPoly r0 = qpoly_trim(std::move(m)), r1 = qpoly_trim(std::move(a));
  QPoly u0 = {}, u1 = {mpq_class(1)};
  while (!r1.empty()) {
    // quotient of r0 by r1
    QPoly q(std::max<size_t>(r0.size(), r1.size()), mpq_class(0));
    QPoly rem = r0;
    QPoly qq;
    while (rem.size() >= r1.size() && !rem.empty()) {
      mpq_class f = rem.back() / r1.back();
      size_t off = rem.size() - r1.size();
      if (qq.size() < off + 1) qq.resize(off + 1, mpq_class(0));
      qq[off] = f;
      for (size_t j = 0; j < r1.size(); ++j) rem[off + j] -= f * r1[j];
      rem = qpoly_trim(std::move(rem));
    }
    // (r0, r1) <- (r1, rem); (u0, u1) <- (u1, u0 - qq*u1)
    QPoly u2 = u0;
    if (!qq.empty() && !u1.empty()) {
      QPoly prod(qq.size() + u1.size() - 1, mpq_class(0));
      for (size_t i = 0; i < qq.size(); ++i)
        for (size_t j = 0; j < u1.size(); ++j) prod[i + j] += qq[i] * u1[j];
      if (u2.size() < prod.size()) u2.resize(prod.size(), mpq_class(0));
      for (size_t i = 0; i < prod.size(); ++i) u2[i] -= prod[i];
    }
    u2 = qpoly_trim(std::move(u2));
    r0 = std::move(r1);
    r1 = std::move(rem);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  return {r0, u0};
}

mpq_class mpq_round_to_prec(const mpq_class& x, long prec) {
  // nearest m / 2^prec
  mpz_class scaled_num = x.get_num() << prec;
  mpz_class m, r;
  mpz_fdiv_qr(m.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(),
              x.get_den().get_mpz_t());
  if (r * 2 >= x.get_den()) m += 1;
  mpq_class out(m, mpz_class(1) << prec);
  out.canonicalize();
  return out;
}

mpq_class two_pow(long e) {
  if (e >= 0) return mpq_class(mpz_class(1) << e, 1);
  mpq_class q(1, mpz_class(1) << (-e));
  q.canonicalize();
  return q;
}

mpq_class mpq_from_mpfr(const mpfr_t v) {
  if (mpfr_zero_p(v)) return mpq_class(0);
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v);
  mpq_class q(m, 1);
  if (e >= 0) {
    q *= mpq_class(mpz_class(1) << e, 1);
  } else {
    mpq_class d(1, mpz_class(1) << (-e));
    d.canonicalize();
    q *= d;
  }
  q.canonicalize();
  return q;
}

struct UnitRoots {
  std::vector<mpq_class> re, im;  // exp(2*pi*i*k/n), k = 0..n-1
  mpq_class err;
};

// cos/sin of 2*pi*k/n at the working precision, as exact rationals with a
// shared error bound.
const UnitRoots& unit_roots(int n, long prec) {
  static std::map<std::pair<int, long>, UnitRoots> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, prec);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  long work = prec + 64;
  UnitRoots roots;
  roots.err = two_pow(-(prec + 32));
  mpfr_t pi, angle, c, s;
  mpfr_init2(pi, work);
  mpfr_init2(angle, work);
  mpfr_init2(c, work);
  mpfr_init2(s, work);
  mpfr_const_pi(pi, MPFR_RNDN);
  for (int k = 0; k < n; ++k) {
    mpfr_mul_si(angle, pi, 2 * k, MPFR_RNDN);
    mpfr_div_si(angle, angle, n, MPFR_RNDN);
    mpfr_cos(c, angle, MPFR_RNDN);
    mpfr_sin(s, angle, MPFR_RNDN);
    roots.re.push_back(mpq_round_to_prec(mpq_from_mpfr(c), prec + 16));
    roots.im.push_back(mpq_round_to_prec(mpq_from_mpfr(s), prec + 16));
  }
  mpfr_clears(pi, angle, c, s, (mpfr_ptr) nullptr);
  return cache.emplace(key, std::move(roots)).first->second;
}

mpq_class abs_q(const mpq_class& x) { return x < 0 ? mpq_class(-x) : x; }

}  // namespace

// ---- Field ----

Field::Field(FieldKind k, int order) : kind_(k), order_(order) {
  if (k == FieldKind::Rationals) {
    order_ = 1;
    degree_ = 1;
    modulus_ = {mpq_class(-1)};  // x - 1, unused
    return;
  }
  if (order < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
  degree_ = euler_phi(order);
  const ZPoly& phi = cyclotomic_zpoly(order);
  modulus_.resize(degree_);
  for (int i = 0; i < degree_; ++i) modulus_[i] = mpq_class(phi[i]);
  // z^(degree+k) reduced, k = 0..degree-2
  std::vector<mpq_class> cur(degree_);
  for (int i = 0; i < degree_; ++i) cur[i] = -modulus_[i];  // z^degree
  zred_.push_back(cur);
  for (int k = 1; k <= degree_ - 2; ++k) {
    std::vector<mpq_class> next(degree_, mpq_class(0));
    // next = z * cur reduced
    mpq_class top = cur[degree_ - 1];
    for (int i = degree_ - 1; i >= 1; --i) next[i] = cur[i - 1];
    next[0] = 0;
    if (top != 0)
      for (int i = 0; i < degree_; ++i) next[i] += top * zred_[0][i];
    zred_.push_back(next);
    cur = std::move(next);
  }
}

const Field* Field::rationals() {
  static Field f(FieldKind::Rationals, 1);
  return &f;
}

const Field* Field::cyclotomic(int order) {
  static std::map<int, std::unique_ptr<Field>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end())
    it = cache
             .emplace(order, std::unique_ptr<Field>(
                                 new Field(FieldKind::Cyclotomic, order)))
             .first;
  return it->second.get();
}

FieldElem Field::zero() const {
  return FieldElem(this, std::vector<mpq_class>(degree_, mpq_class(0)));
}

FieldElem Field::one() const { return integer(1); }

FieldElem Field::integer(long v) const {
  std::vector<mpq_class> c(degree_, mpq_class(0));
  c[0] = v;
  return FieldElem(this, std::move(c));
}

FieldElem Field::rational(long num, long den) const {
  std::vector<mpq_class> c(degree_, mpq_class(0));
  c[0] = mpq_class(num, den);
  c[0].canonicalize();
  return FieldElem(this, std::move(c));
}

FieldElem Field::from_mpq(const mpq_class& q) const {
  std::vector<mpq_class> c(degree_, mpq_class(0));
  c[0] = q;
  return FieldElem(this, std::move(c));
}

FieldElem Field::gen() const {
  if (kind_ == FieldKind::Rationals || degree_ == 1) {
    // zeta_1 = 1, zeta_2 = -1
    return integer(order_ == 2 ? -1 : 1);
  }
  std::vector<mpq_class> c(degree_, mpq_class(0));
  c[1] = 1;
  return FieldElem(this, std::move(c));
}

FieldElem Field::gen_pow(long k) const {
  long n = order_;
  long r = ((k % n) + n) % n;
  FieldElem out = one();
  FieldElem z = gen();
  for (long i = 0; i < r; ++i) out = out * z;
  return out;
}

std::string Field::describe() const {
  if (kind_ == FieldKind::Rationals) return "Q";
  return "Q(zeta_" + std::to_string(order_) + ")";
}

// ---- FieldElem ----

bool FieldElem::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool FieldElem::is_one() const {
  if (c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool FieldElem::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

FieldElem FieldElem::operator-() const {
  std::vector<mpq_class> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
  return FieldElem(fld_, std::move(c));
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  if (fld_ != o.fld_) throw std::invalid_argument("field mismatch");
  std::vector<mpq_class> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] + o.c_[i];
  return FieldElem(fld_, std::move(c));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  if (fld_ != o.fld_) throw std::invalid_argument("field mismatch");
  std::vector<mpq_class> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] - o.c_[i];
  return FieldElem(fld_, std::move(c));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  if (fld_ != o.fld_) throw std::invalid_argument("field mismatch");
  int d = fld_->degree_;
  if (d == 1) {
    std::vector<mpq_class> c{c_[0] * o.c_[0]};
    return FieldElem(fld_, std::move(c));
  }
  std::vector<mpq_class> conv(2 * d - 1, mpq_class(0));
  for (int i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (o.c_[j] == 0) continue;
      conv[i + j] += c_[i] * o.c_[j];
    }
  }
  std::vector<mpq_class> c(conv.begin(), conv.begin() + d);
  for (int k = 0; k < d - 1; ++k) {
    if (conv[d + k] == 0) continue;
    const auto& red = fld_->zred_[k];
    for (int i = 0; i < d; ++i) c[i] += conv[d + k] * red[i];
  }
  return FieldElem(fld_, std::move(c));
}

FieldElem FieldElem::inv() const {
  if (is_zero()) throw std::domain_error("division by zero");
  int d = fld_->degree_;
  if (d == 1) {
    std::vector<mpq_class> c{1 / c_[0]};
    return FieldElem(fld_, std::move(c));
  }
  // u * a = gcd(a, Phi) mod Phi; as Phi is irreducible the gcd is a constant.
  QPoly a(c_.begin(), c_.end());
  QPoly m(fld_->modulus_.begin(), fld_->modulus_.end());
  m.push_back(mpq_class(1));
  auto [g, u] = qpoly_half_xgcd(a, m);
  if (g.size() != 1) throw std::logic_error("inv: modulus not coprime");
  std::vector<mpq_class> c(d, mpq_class(0));
  for (size_t i = 0; i < u.size() && i < (size_t)d; ++i) c[i] = u[i] / g[0];
  return FieldElem(fld_, std::move(c));
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
  return *this * o.inv();
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (fld_ != o.fld_) return false;
  return c_ == o.c_;
}

FieldElem FieldElem::conj() const {
  if (fld_->kind_ == FieldKind::Rationals || fld_->degree_ == 1) return *this;
  int n = fld_->order_;
  FieldElem out = fld_->zero();
  for (int i = 0; i < fld_->degree_; ++i) {
    if (c_[i] == 0) continue;
    FieldElem term = fld_->gen_pow(((n - i) % n));
    for (auto& t : term.c_) t *= c_[i];
    out = out + term;
  }
  return out;
}

FieldElem FieldElem::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  FieldElem out = fld_->one();
  FieldElem base = *this;
  while (e > 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

std::string FieldElem::str() const {
  auto qs = [](const mpq_class& q) { return q.get_str(); };
  if (fld_->kind_ == FieldKind::Rationals) return qs(c_[0]);
  std::ostringstream os;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << " + ";
    os << qs(c_[i]);
    if (i == 1) os << "*z";
    if (i > 1) os << "*z^" << i;
  }
  return os.str();
}

std::optional<FieldElem> Field::parse(const std::string& s) const {
  std::string t;
  for (char ch : s)
    if (!isspace((unsigned char)ch)) t.push_back(ch);
  if (t.empty()) return std::nullopt;
  std::vector<mpq_class> c(degree_, mpq_class(0));
  size_t pos = 0;
  while (pos < t.size()) {
    size_t next = t.find('+', pos + 1);  // skip a leading sign
    std::string term = t.substr(pos, next == std::string::npos
                                         ? std::string::npos
                                         : next - pos);
    pos = next == std::string::npos ? t.size() : next + 1;
    if (term.empty()) return std::nullopt;
    // term: coeff | coeff*z | coeff*z^k | z | z^k | -z...
    std::string coeff = term;
    long deg = 0;
    size_t zpos = term.find('z');
    if (zpos != std::string::npos) {
      deg = 1;
      if (zpos + 1 < term.size()) {
        if (term[zpos + 1] != '^') return std::nullopt;
        try {
          deg = std::stol(term.substr(zpos + 2));
        } catch (...) {
          return std::nullopt;
        }
      }
      coeff = term.substr(0, zpos);
      if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
      if (coeff.empty()) coeff = "1";
      if (coeff == "-") coeff = "-1";
    }
    if (deg < 0 || deg >= degree_) return std::nullopt;
    try {
      mpq_class q(coeff);
      q.canonicalize();
      c[deg] += q;
    } catch (...) {
      return std::nullopt;
    }
  }
  return FieldElem(this, std::move(c));
}

// ---- FPoly ----

FPoly fpoly_normalize(FPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

int fpoly_deg(const FPoly& p) { return (int)p.size() - 1; }

FieldElem fpoly_eval(const FPoly& p, const FieldElem& x) {
  if (p.empty()) return x.field()->zero();
  FieldElem acc = p.back();
  for (int i = (int)p.size() - 2; i >= 0; --i) acc = acc * x + p[i];
  return acc;
}

FPoly fpoly_derivative(const FPoly& p) {
  FPoly d;
  for (size_t i = 1; i < p.size(); ++i) {
    FieldElem c = p[i];
    d.push_back(c * c.field()->integer((long)i));
  }
  return fpoly_normalize(std::move(d));
}

FPoly fpoly_monic(const FPoly& p) {
  FPoly q = fpoly_normalize(p);
  if (q.empty()) return q;
  FieldElem li = q.back().inv();
  for (auto& c : q) c = c * li;
  return q;
}

FPoly fpoly_mul(const FPoly& a, const FPoly& b) {
  if (a.empty() || b.empty()) return {};
  const Field* f = a[0].field();
  FPoly out(a.size() + b.size() - 1, f->zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] = out[i + j] + a[i] * b[j];
    }
  }
  return fpoly_normalize(std::move(out));
}

FPoly fpoly_rem(FPoly a, const FPoly& b) {
  a = fpoly_normalize(std::move(a));
  FPoly bb = fpoly_normalize(b);
  if (bb.empty()) throw std::domain_error("fpoly_rem: zero divisor");
  while (a.size() >= bb.size() && !a.empty()) {
    FieldElem f = a.back() / bb.back();
    size_t off = a.size() - bb.size();
    for (size_t j = 0; j < bb.size(); ++j) a[off + j] = a[off + j] - f * bb[j];
    a = fpoly_normalize(std::move(a));
  }
  return a;
}

FPoly fpoly_gcd(FPoly a, FPoly b) {
  a = fpoly_normalize(std::move(a));
  b = fpoly_normalize(std::move(b));
  while (!b.empty()) {
    FPoly r = fpoly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return fpoly_monic(a);
}

bool fpoly_squarefree(const FPoly& p) {
  FPoly g = fpoly_gcd(p, fpoly_derivative(p));
  return fpoly_deg(g) <= 0;
}

std::string fpoly_str(const FPoly& p, const std::string& var) {
  if (p.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) os << " + ";
    os << "(" << p[i].str() << ")";
    if (i == 1) os << "*" << var;
    if (i > 1) os << "*" << var << "^" << i;
  }
  return os.str();
}

// ---- complex balls ----

CBall CBall::operator+(const CBall& o) const {
  return CBall(re + o.re, im + o.im, rad + o.rad);
}

CBall CBall::operator-(const CBall& o) const {
  return CBall(re - o.re, im - o.im, rad + o.rad);
}

CBall CBall::operator*(const CBall& o) const {
  mpq_class a = abs_upper(), b = o.abs_upper();
  return CBall(re * o.re - im * o.im, re * o.im + im * o.re,
               a * o.rad + b * rad + rad * o.rad);
}

mpq_class CBall::abs_upper() const { return abs_q(re) + abs_q(im); }

bool CBall::contains_zero_only_if(const mpq_class& tol) const {
  return rad <= tol;
}

double CBall::approx_abs() const {
  double x = re.get_d(), y = im.get_d();
  return std::sqrt(x * x + y * y);
}

CBall embed(const FieldElem& x, long precision_bits) {
  const Field* f = x.field();
  if (f->kind() == FieldKind::Rationals || f->degree() == 1) {
    mpq_class v = x.coeff(0);
    if (f->kind() == FieldKind::Cyclotomic && f->order() == 2) {
      // basis is {1}; zeta = -1 already folded into coefficients
    }
    return CBall(v, mpq_class(0), mpq_class(0));
  }
  const UnitRoots& roots = unit_roots(f->order(), precision_bits);
  CBall acc;
  for (int i = 0; i < f->degree(); ++i) {
    if (x.coeff(i) == 0) continue;
    CBall term(roots.re[i] * x.coeff(i), roots.im[i] * x.coeff(i),
               roots.err * abs_q(x.coeff(i)));
    acc = acc + term;
  }
  return acc;
}

namespace {

struct QC {  // plain complex with rounded rational parts
  mpq_class re, im;
};

QC qc_mul(const QC& a, const QC& b, long prec) {
  QC out{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  out.re = mpq_round_to_prec(out.re, prec);
  out.im = mpq_round_to_prec(out.im, prec);
  return out;
}

QC qc_sub(const QC& a, const QC& b) { return QC{a.re - b.re, a.im - b.im}; }
QC qc_add(const QC& a, const QC& b) { return QC{a.re + b.re, a.im + b.im}; }

QC qc_div(const QC& a, const QC& b, long prec) {
  mpq_class n = b.re * b.re + b.im * b.im;
  if (n == 0) throw std::runtime_error("complex division by zero");
  QC out{(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  out.re = mpq_round_to_prec(out.re, prec);
  out.im = mpq_round_to_prec(out.im, prec);
  return out;
}

mpq_class qc_abs_sq(const QC& a) { return a.re * a.re + a.im * a.im; }

}  // namespace

std::vector<CBall> complex_roots(const FPoly& monic, long precision_bits) {
  FPoly p = fpoly_normalize(monic);
  int deg = fpoly_deg(p);
  if (deg < 1) return {};
  if (!p.back().is_one()) throw std::invalid_argument("polynomial not monic");
  long prec = precision_bits;

  std::vector<CBall> cb(deg + 1);
  std::vector<QC> coeff(deg + 1);
  mpq_class maxabs(0);
  for (int i = 0; i <= deg; ++i) {
    cb[i] = embed(p[i], prec);
    coeff[i] = QC{mpq_round_to_prec(cb[i].re, prec),
                  mpq_round_to_prec(cb[i].im, prec)};
    mpq_class a = cb[i].abs_upper();
    if (a > maxabs) maxabs = a;
  }
  // Durand-Kerner from a spiral of initial guesses inside |z| <= 1 + max|c|.
  mpq_class radius = maxabs + 1;
  std::vector<QC> z(deg);
  {
    QC w{mpq_class(4, 10), mpq_class(9, 10)};
    w.re.canonicalize();
    w.im.canonicalize();
    QC cur{radius * mpq_class(7, 10), radius * mpq_class(2, 10)};
    cur.re.canonicalize();
    cur.im.canonicalize();
    for (int k = 0; k < deg; ++k) {
      z[k] = cur;
      cur = qc_mul(cur, w, prec);
      cur = qc_add(cur, QC{mpq_class(1, 1000), mpq_class(1, 997)});
    }
  }
  auto eval = [&](const QC& x) {
    QC acc = coeff[deg];
    for (int i = deg - 1; i >= 0; --i) acc = qc_add(qc_mul(acc, x, prec), coeff[i]);
    return acc;
  };
  mpq_class tol = two_pow(-(2 * prec / 3));
  mpq_class tol_sq = tol * tol;
  bool converged = false;
  for (int iter = 0; iter < 500 && !converged; ++iter) {
    mpq_class worst(0);
    for (int k = 0; k < deg; ++k) {
      QC num = eval(z[k]);
      QC den{mpq_class(1), mpq_class(0)};
      for (int j = 0; j < deg; ++j)
        if (j != k) den = qc_mul(den, qc_sub(z[k], z[j]), prec);
      QC w = qc_div(num, den, prec);
      z[k] = qc_sub(z[k], w);
      mpq_class ws = qc_abs_sq(w);
      if (ws > worst) worst = ws;
    }
    if (worst < tol_sq) converged = true;
  }
  if (!converged)
    throw std::runtime_error("complex_roots: Durand-Kerner did not converge; "
                             "raise precision");
  // Weierstrass inclusion radius: each disk D(z_k, deg*|W_k|) meets a root.
  std::vector<CBall> out;
  for (int k = 0; k < deg; ++k) {
    CBall zz(z[k].re, z[k].im, mpq_class(0));
    CBall num = cb[deg];
    for (int i = deg - 1; i >= 0; --i) num = num * zz + cb[i];
    CBall den(mpq_class(1), mpq_class(0), mpq_class(0));
    for (int j = 0; j < deg; ++j)
      if (j != k) {
        CBall diff(z[k].re - z[j].re, z[k].im - z[j].im, mpq_class(0));
        den = den * diff;
      }
    // |W| <= (|num| upper) / (|den| lower); crude but safe lower bound
    mpq_class num_up = num.abs_upper() + num.rad;
    mpq_class den_sq = qc_abs_sq(QC{den.re, den.im});
    mpq_class den_low_sq = den_sq;  // exact midpoint; subtract radius effect
    mpq_class den_up = den.abs_upper() + den.rad;
    mpq_class rad;
    if (den_sq == 0) {
      rad = mpq_class(1);  // degenerate cluster; give up on tightness
    } else {
      // |den| >= den_sq / den_up  (since |den| >= |den|^2/|den|_upper)
      mpq_class den_low = den_sq / den_up;
      if (den_low - den.rad > 0) den_low = den_low - den.rad;
      rad = mpq_class(deg + 1) * num_up / den_low;
    }
    out.emplace_back(z[k].re, z[k].im, rad);
  }
  return out;
}

std::optional<mpq_class> round_to_rational(const mpq_class& x,
                                           const mpz_class& den_bound,
                                           const mpq_class& tol) {
  // Continued-fraction convergents of x, stopping at the denominator bound.
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpq_class rem = x;
  mpq_class best;
  bool have = false;
  for (int step = 0; step < 1000; ++step) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rem.get_num().get_mpz_t(),
               rem.get_den().get_mpz_t());
    mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > den_bound) break;
    mpq_class cand(p2, q2);
    cand.canonicalize();
    if (!have || abs_q(cand - x) < abs_q(best - x)) {
      best = cand;
      have = true;
    }
    if (cand == x) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    mpq_class frac = rem - mpq_class(a);
    if (frac == 0) break;
    rem = 1 / frac;
  }
  if (!have) return std::nullopt;
  if (abs_q(best - x) > tol) return std::nullopt;
  return best;
}

namespace {

// Textbook LLL on integer row vectors (delta = 3/4), exact rational GSO.
void lll_reduce(std::vector<std::vector<mpz_class>>& b) {
  const size_t n = b.size();
  if (n == 0) return;
  const size_t m = b[0].size();
  auto dotzz = [&](const std::vector<mpz_class>& x,
                   const std::vector<mpz_class>& y) {
    mpz_class s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  };
  std::vector<std::vector<mpq_class>> gso(n, std::vector<mpq_class>(m));
  std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
  std::vector<mpq_class> B(n);
  auto recompute = [&]() {
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < m; ++j) gso[i][j] = mpq_class(b[i][j]);
      for (size_t k = 0; k < i; ++k) {
        mpq_class num(0);
        for (size_t j = 0; j < m; ++j) num += mpq_class(b[i][j]) * gso[k][j];
        mu[i][k] = B[k] == 0 ? mpq_class(0) : num / B[k];
        for (size_t j = 0; j < m; ++j) gso[i][j] -= mu[i][k] * gso[k][j];
      }
      B[i] = 0;
      for (size_t j = 0; j < m; ++j) B[i] += gso[i][j] * gso[i][j];
    }
  };
  recompute();
  size_t k = 1;
  int guard = 0;
  while (k < n && guard++ < 100000) {
    for (size_t j = k; j-- > 0;) {
      // size reduction
      mpq_class q = mu[k][j];
      mpz_class r;
      mpz_class num = q.get_num(), den = q.get_den();
      mpz_class twice_plus = 2 * num + den;
      mpz_class dd = 2 * den;
      mpz_fdiv_q(r.get_mpz_t(), twice_plus.get_mpz_t(), dd.get_mpz_t());
      if (r != 0) {
        for (size_t t = 0; t < m; ++t) b[k][t] -= r * b[j][t];
        recompute();
      }
    }
    mpq_class lhs = B[k];
    mpq_class rhs = (mpq_class(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      recompute();
      if (k > 1) --k;
    }
  }
  (void)dotzz;
}

mpz_class round_q_to_z(const mpq_class& q) {
  mpz_class r;
  mpz_class twice = 2 * q.get_num() + q.get_den();
  mpz_class dd = 2 * q.get_den();
  mpz_fdiv_q(r.get_mpz_t(), twice.get_mpz_t(), dd.get_mpz_t());
  return r;
}

}  // namespace

std::optional<FieldElem> reconstruct_exact(const CBall& approx,
                                           const Field* field,
                                           const mpz_class& height_bound,
                                           long precision_bits) {
  const long prec = precision_bits;
  mpq_class slack = approx.rad + two_pow(-(prec / 2));
  const int d = field->degree();

  auto verify_close = [&](const FieldElem& cand) -> bool {
    CBall e = embed(cand, prec);
    mpq_class dre = e.re - approx.re, dim = e.im - approx.im;
    mpq_class dist_sq = dre * dre + dim * dim;
    mpq_class bound = approx.rad + e.rad + two_pow(-(prec / 2));
    return dist_sq <= bound * bound;
  };

  if (field->kind() == FieldKind::Rationals || d == 1) {
    if (abs_q(approx.im) > slack) return std::nullopt;
    auto r = round_to_rational(approx.re, height_bound, slack);
    if (!r) return std::nullopt;
    FieldElem cand = field->from_mpq(*r);
    if (!verify_close(cand)) return std::nullopt;
    return cand;
  }

  if (d == 2) {
    // x = c0 + c1*zeta: Im(x) = c1*Im(zeta), Re(x) = c0 + c1*Re(zeta)
    const UnitRoots& roots = unit_roots(field->order(), prec);
    const mpq_class& zr = roots.re[1];
    const mpq_class& zi = roots.im[1];
    if (zi == 0) return std::nullopt;
    mpq_class c1 = approx.im / zi;
    mpq_class c0 = approx.re - c1 * zr;
    mpq_class tol = (slack + roots.err * 4) / abs_q(zi) + two_pow(-(prec / 2));
    auto r1 = round_to_rational(c1, height_bound, tol);
    if (!r1) return std::nullopt;
    auto r0 = round_to_rational(c0 + (*r1 - c1) * zr, height_bound, tol);
    if (!r0) return std::nullopt;
    FieldElem cand =
        field->from_mpq(*r0) + field->from_mpq(*r1) * field->gen();
    if (!verify_close(cand)) return std::nullopt;
    return cand;
  }

  // Higher degree: integer relation a_0 + a_1*zeta + ... - q*x ~ 0 via LLL.
  long tbits = std::max<long>(64, prec - 16);
  mpz_class T = mpz_class(1) << tbits;
  auto scaled = [&](const mpq_class& q) {
    mpq_class s = q * mpq_class(T);
    return round_q_to_z(s);
  };
  std::vector<std::vector<mpz_class>> basis;
  for (int i = 0; i < d; ++i) {
    std::vector<mpz_class> row(d + 1 + 2, mpz_class(0));
    row[i] = 1;
    CBall zi = embed(field->gen_pow(i), prec);
    row[d + 1] = scaled(zi.re);
    row[d + 2] = scaled(zi.im);
    basis.push_back(std::move(row));
  }
  {
    std::vector<mpz_class> row(d + 1 + 2, mpz_class(0));
    row[d] = 1;
    row[d + 1] = -scaled(approx.re);
    row[d + 2] = -scaled(approx.im);
    basis.push_back(std::move(row));
  }
  lll_reduce(basis);
  for (const auto& v : basis) {
    const mpz_class& q = v[d];
    if (q == 0) continue;
    if (abs(q) > height_bound) continue;
    // residual must be tiny relative to T
    mpz_class resbound = mpz_class(1) << std::max<long>(8, tbits - prec / 3);
    if (abs(v[d + 1]) > resbound || abs(v[d + 2]) > resbound) continue;
    FieldElem cand = field->zero();
    for (int i = 0; i < d; ++i) {
      mpq_class ci(v[i], q);
      ci.canonicalize();
      if (abs(ci.get_den()) > height_bound) {
        cand = FieldElem();
        break;
      }
      cand = cand + field->from_mpq(ci) * field->gen_pow(i);
    }
    if (!cand.valid()) continue;
    if (verify_close(cand)) return cand;
  }
  return std::nullopt;
}

}  // namespace wha
