// Exact scalar arithmetic over the rationals and over cyclotomic fields
// Q(zeta_n), represented by dense coefficient vectors in the power basis of
// zeta modulo the n-th cyclotomic polynomial.  Also hosts the
// numeric-assisted exact reconstruction used when splitting commutative
// semisimple algebras.

#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wha {

enum class FieldKind { Rationals, Cyclotomic };

class FieldElem;

/// A base field: either Q or the cyclotomic field Q(zeta_n).  Instances are
/// interned; a `const Field*` is a canonical handle and two elements live in
/// the same field iff their handles compare equal.
class Field {
 public:
  static const Field* rationals();
  static const Field* cyclotomic(int order);

  FieldKind kind() const { return kind_; }
  int order() const { return order_; }
  int degree() const { return degree_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem integer(long v) const;
  FieldElem rational(long num, long den) const;
  FieldElem from_mpq(const mpq_class& q) const;
  /// zeta (primitive order-th root of unity); order must be > 1.
  FieldElem gen() const;
  /// zeta^k, any integer k.
  FieldElem gen_pow(long k) const;

  /// Parses the canonical string form: "p/q" for rationals,
  /// "c0 + c1*z + ..." for cyclotomic elements.
  std::optional<FieldElem> parse(const std::string& s) const;

  // Coefficients of Phi_n (monic, length degree; leading 1 implied).
  const std::vector<mpq_class>& modulus() const { return modulus_; }

  std::string describe() const;

 private:
  friend class FieldElem;
  Field(FieldKind k, int order);

  FieldKind kind_;
  int order_;
  int degree_;
  std::vector<mpq_class> modulus_;
  // zred_[k] = coefficients of z^(degree+k) reduced mod Phi_n, k = 0..degree-2.
  std::vector<std::vector<mpq_class>> zred_;
};

/// An element of a Field.  Immutable value type; all arithmetic is exact and
/// results are kept in canonical form (reduced mod Phi_n, rationals in lowest
/// terms), so equality is coefficientwise.
class FieldElem {
 public:
  FieldElem() : fld_(nullptr) {}

  const Field* field() const { return fld_; }
  bool valid() const { return fld_ != nullptr; }
  bool is_zero() const;
  bool is_one() const;

  const mpq_class& coeff(int i) const { return c_[i]; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  /// Rational part; exact only when the element is rational.
  const mpq_class& rat() const { return c_[0]; }
  bool is_rational() const;

  FieldElem operator-() const;
  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  /// Throws std::domain_error on division by zero.
  FieldElem operator/(const FieldElem& o) const;
  FieldElem inv() const;
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  /// Complex conjugation (zeta -> zeta^{n-1}); identity on Q.
  FieldElem conj() const;

  FieldElem pow(long e) const;

  std::string str() const;

 private:
  friend class Field;
  FieldElem(const Field* f, std::vector<mpq_class> c)
      : fld_(f), c_(std::move(c)) {}

  const Field* fld_;
  std::vector<mpq_class> c_;
};

// ---- dense polynomials over a field (used by min_poly and splitting) ----

/// Polynomial coefficients, index = degree.  Normalized: no trailing zeros.
using FPoly = std::vector<FieldElem>;

FPoly fpoly_normalize(FPoly p);
int fpoly_deg(const FPoly& p);  // -1 for the zero polynomial
FieldElem fpoly_eval(const FPoly& p, const FieldElem& x);
FPoly fpoly_derivative(const FPoly& p);
FPoly fpoly_monic(const FPoly& p);
FPoly fpoly_mul(const FPoly& a, const FPoly& b);
/// Remainder of a mod b (b nonzero).
FPoly fpoly_rem(FPoly a, const FPoly& b);
FPoly fpoly_gcd(FPoly a, FPoly b);  // monic gcd
bool fpoly_squarefree(const FPoly& p);
std::string fpoly_str(const FPoly& p, const std::string& var = "x");

// ---- complex balls and exact reconstruction ----

/// A complex ball at a fixed binary precision: midpoint plus an error radius
/// that every arithmetic step widens conservatively.
struct CBall {
  // Midpoint as exact rationals scaled by 2^-prec internally; we store plain
  // mpq to keep the type trivially copyable and exact.
  mpq_class re, im, rad;

  CBall() : re(0), im(0), rad(0) {}
  CBall(mpq_class r, mpq_class i, mpq_class e)
      : re(std::move(r)), im(std::move(i)), rad(std::move(e)) {}

  CBall operator+(const CBall& o) const;
  CBall operator-(const CBall& o) const;
  CBall operator*(const CBall& o) const;
  /// Upper bound on |mid|.
  mpq_class abs_upper() const;
  bool contains_zero_only_if(const mpq_class& tol) const;  // rad <= tol
  double approx_abs() const;
};

/// Embeds an exact element into C via zeta -> exp(2*pi*i/n), as a ball whose
/// radius accounts for the precision of the trigonometric evaluations.
CBall embed(const FieldElem& x, long precision_bits);

/// All complex roots of a monic polynomial with exact coefficients, located
/// by Durand-Kerner iteration at the given precision and certified with a
/// Weierstrass-style inclusion radius.  Throws std::runtime_error if the
/// iteration fails to converge (raise precision).
std::vector<CBall> complex_roots(const FPoly& monic, long precision_bits);

/// Attempts to reconstruct an exact field element from a complex ball.
/// Rationals and quadratic cyclotomic fields use direct linear solves with
/// denominator-bounded rounding; higher-degree fields use LLL-based integer
/// relation finding.  On success the returned element's embedding lies within
/// (a small multiple of) the ball; the caller must still verify exactly by
/// substitution.  Returns nullopt on failure (insufficient precision,
/// excessive height, or a value genuinely outside the field).
std::optional<FieldElem> reconstruct_exact(const CBall& approx,
                                           const Field* field,
                                           const mpz_class& height_bound,
                                           long precision_bits);

/// Best rational approximation with denominator <= bound (continued
/// fractions); returns nullopt if no bounded-denominator rational lies within
/// tol of x.
std::optional<mpq_class> round_to_rational(const mpq_class& x,
                                           const mpz_class& den_bound,
                                           const mpq_class& tol);

}  // namespace wha
