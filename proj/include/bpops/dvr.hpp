#pragma once

// Exact arithmetic over the p-local integers Z_(p) and exact linear algebra
// over Q: echelon forms of lattices, kernels, saturation and commutants.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpops {

using Integer = mpz_class;
using Rational = mpq_class;
using QVector = std::vector<Rational>;

/// Input violates p-integrality (some entry has negative valuation).
class NonIntegralError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operands of incompatible shape.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical self-check failed; always indicates a bug.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A rational prime. Construction rejects non-primes.
class Prime {
 public:
  explicit Prime(std::uint32_t value);

  std::uint32_t value() const { return value_; }
  Integer as_integer() const { return Integer(value_); }
  Integer power(unsigned long e) const;

  friend bool operator==(Prime, Prime) = default;

 private:
  std::uint32_t value_;
};

/// Marker returned by valuation() for zero.
inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

long valuation(const Integer& x, Prime p);
/// Exponent of p in x; negative when p divides the reduced denominator.
long valuation(const Rational& x, Prime p);

inline bool is_p_integral(const Rational& x, Prime p) { return valuation(x, p) >= 0; }

/// x with all factors of p removed (zero stays zero).
Rational unit_part(const Rational& x, Prime p);

/// Canonical residue of an integral x modulo p^e, in [0, p^e).
Integer residue(const Rational& x, Prime p, unsigned long e);

/// An element of Z_(p): a reduced fraction whose denominator is prime to p.
class PAdicScalar {
 public:
  PAdicScalar(Rational value, Prime p);
  PAdicScalar(long value, Prime p) : PAdicScalar(Rational(value), p) {}

  const Rational& value() const { return value_; }
  Prime prime() const { return prime_; }
  /// Always >= 0, or kInfiniteValuation for zero.
  long valuation() const { return bpops::valuation(value_, prime_); }
  bool is_zero() const { return value_ == 0; }
  bool is_unit() const { return valuation() == 0; }

  PAdicScalar& operator+=(const PAdicScalar& o);
  PAdicScalar& operator-=(const PAdicScalar& o);
  PAdicScalar& operator*=(const PAdicScalar& o);

  friend PAdicScalar operator+(PAdicScalar a, const PAdicScalar& b) { return a += b; }
  friend PAdicScalar operator-(PAdicScalar a, const PAdicScalar& b) { return a -= b; }
  friend PAdicScalar operator*(PAdicScalar a, const PAdicScalar& b) { return a *= b; }
  friend PAdicScalar operator-(const PAdicScalar& a) { return {-a.value_, a.prime_}; }
  friend bool operator==(const PAdicScalar& a, const PAdicScalar& b) {
    return a.prime_ == b.prime_ && a.value_ == b.value_;
  }

  std::string to_string() const { return value_.get_str(); }

 private:
  void require_same_prime(const PAdicScalar& o) const;

  Rational value_;
  Prime prime_;
};

/// Dense row-major matrix over Q.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  static QMatrix scalar(std::size_t n, const Rational& s);
  /// Matrix with a single 1 at (row, col).
  static QMatrix elementary(std::size_t n, std::size_t row, std::size_t col);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QVector row(std::size_t r) const;
  bool is_zero() const;
  bool is_p_integral(Prime p) const;
  /// Principal submatrix on the given (ordered) index set.
  QMatrix restrict_to(std::span<const std::size_t> indices) const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(const Rational& s);

  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator*(QMatrix a, const Rational& s) { return a *= s; }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form over Q; returns the pivot columns.
std::vector<std::size_t> rref(QMatrix& a);

/// Basis of {x : A x = 0} over Q (one vector per free column).
std::vector<QVector> kernel(const QMatrix& a);

/// Z_(p)-basis of (Q-span of rows) ∩ Z_(p)^n. Rows must be Q-independent.
std::vector<QVector> saturate(std::vector<QVector> rows, Prime p);

struct Pivot {
  std::size_t coordinate;
  long exponent;
  friend bool operator==(const Pivot&, const Pivot&) = default;
};

/// A finitely generated Z_(p)-submodule of Z_(p)^rank in canonical echelon
/// form: pivot coordinates strictly increase along the basis, each pivot entry
/// is exactly p^e, entries below a pivot vanish and entries above it are
/// canonical residues modulo p^e. Equal lattices have identical forms.
class DvrLattice {
 public:
  DvrLattice(Prime p, std::size_t ambient_rank) : prime_(p), ambient_rank_(ambient_rank) {}

  Prime prime() const { return prime_; }
  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<QVector>& basis() const { return basis_; }
  const std::vector<Pivot>& pivots() const { return pivots_; }

  std::vector<long> pivot_exponents() const;
  /// Smith invariants (p-exponents), ascending.
  std::vector<long> elementary_divisors() const;
  /// Length of Z_(p)^rank / L, or nullopt when L has lower rank.
  std::optional<long> colength() const;
  bool is_full() const;

  /// Coordinate projection onto the first `count` coordinates, re-echelonized.
  DvrLattice project_prefix(std::size_t count) const;
  bool contains(const DvrLattice& other) const;

  friend bool operator==(const DvrLattice& a, const DvrLattice& b) {
    return a.prime_ == b.prime_ && a.ambient_rank_ == b.ambient_rank_ && a.basis_ == b.basis_;
  }

 private:
  friend DvrLattice echelon_lattice(std::span<const QVector>, std::size_t, Prime);

  Prime prime_;
  std::size_t ambient_rank_;
  std::vector<QVector> basis_;
  std::vector<Pivot> pivots_;
};

/// Canonical echelon form of the Z_(p)-span of the generators.
/// Throws NonIntegralError on non-integral entries, DimensionError on length mismatch.
DvrLattice echelon_lattice(std::span<const QVector> generators, std::size_t ambient_rank, Prime p);

/// Coefficients c with Σ c_i basis_i = v, or nullopt when v ∉ L.
std::optional<QVector> lattice_membership(const QVector& v, const DvrLattice& lattice);

/// Σ c_i basis_i, exactly.
QVector combine(std::span<const QVector> basis, const QVector& coefficients);

struct Commutant {
  std::size_t size = 0;
  /// Z_(p)-basis of the integral commutant, canonical.
  std::vector<QMatrix> basis;
  std::size_t rank() const { return basis.size(); }
};

/// Integral commutant {X : XM = MX for all M}, solved over Q then saturated.
Commutant commutant(std::span<const QMatrix> mats, std::size_t size, Prime p);

}  // namespace bpops
