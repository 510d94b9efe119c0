#include "bpops/dvr.hpp"

#include <algorithm>
#include <utility>

namespace bpops {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long min_valuation(const QVector& v, Prime p) {
  long best = kInfiniteValuation;
  for (const auto& x : v) best = std::min(best, valuation(x, p));
  return best;
}

Rational p_power(Prime p, long e) {
  if (e >= 0) return Rational(p.power(static_cast<unsigned long>(e)));
  return Rational(Integer(1), p.power(static_cast<unsigned long>(-e)));
}

void axpy(QVector& y, const Rational& a, const QVector& x) {
  for (std::size_t i = 0; i < y.size(); ++i)
    if (x[i] != 0) y[i] -= a * x[i];
}

}  // namespace

Prime::Prime(std::uint32_t value) : value_(value) {
  if (!is_prime(value)) throw std::invalid_argument("not a prime: " + std::to_string(value));
}

Integer Prime::power(unsigned long e) const {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), value_, e);
  return r;
}

long valuation(const Integer& x, Prime p) {
  if (x == 0) return kInfiniteValuation;
  Integer rest;
  Integer prime = p.as_integer();
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

long valuation(const Rational& x, Prime p) {
  if (x == 0) return kInfiniteValuation;
  return valuation(Integer(x.get_num()), p) - valuation(Integer(x.get_den()), p);
}

Rational unit_part(const Rational& x, Prime p) {
  if (x == 0) return x;
  return x / p_power(p, valuation(x, p));
}

Integer residue(const Rational& x, Prime p, unsigned long e) {
  if (!is_p_integral(x, p)) throw NonIntegralError("residue of non-integral " + x.get_str());
  Integer modulus = p.power(e);
  Integer num = x.get_num() % modulus;
  if (num < 0) num += modulus;
  Integer den = x.get_den() % modulus;
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    // Only possible when modulus == 1.
    return 0;
  }
  return (num * inv) % modulus;
}

PAdicScalar::PAdicScalar(Rational value, Prime p) : value_(std::move(value)), prime_(p) {
  value_.canonicalize();
  if (!is_p_integral(value_, p))
    throw NonIntegralError(value_.get_str() + " is not " + std::to_string(p.value()) + "-integral");
}

void PAdicScalar::require_same_prime(const PAdicScalar& o) const {
  if (!(prime_ == o.prime_)) throw std::invalid_argument("PAdicScalar primes differ");
}

PAdicScalar& PAdicScalar::operator+=(const PAdicScalar& o) {
  require_same_prime(o);
  value_ += o.value_;
  return *this;
}

PAdicScalar& PAdicScalar::operator-=(const PAdicScalar& o) {
  require_same_prime(o);
  value_ -= o.value_;
  return *this;
}

PAdicScalar& PAdicScalar::operator*=(const PAdicScalar& o) {
  require_same_prime(o);
  value_ *= o.value_;
  return *this;
}

// ---------------------------------------------------------------- QMatrix

QMatrix QMatrix::identity(std::size_t n) { return scalar(n, Rational(1)); }

QMatrix QMatrix::scalar(std::size_t n, const Rational& s) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

QMatrix QMatrix::elementary(std::size_t n, std::size_t row, std::size_t col) {
  QMatrix m(n, n);
  m(row, col) = 1;
  return m;
}

QVector QMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
}

bool QMatrix::is_p_integral(Prime p) const {
  return std::all_of(data_.begin(), data_.end(),
                     [p](const Rational& x) { return bpops::is_p_integral(x, p); });
}

QMatrix QMatrix::restrict_to(std::span<const std::size_t> indices) const {
  QMatrix out(indices.size(), indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) out(i, j) = (*this)(indices[i], indices[j]);
  return out;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix difference shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator*=(const Rational& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
  QMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

// ------------------------------------------------------ field linear algebra

std::vector<std::size_t> rref(QMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && a(sel, col) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(row, j));
    Rational inv = 1 / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (a(row, j) != 0) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<QVector> kernel(const QMatrix& a) {
  QMatrix r = a;
  const auto pivots = rref(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<QVector> out;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector x(a.cols());
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -r(i, f);
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<QVector> saturate(std::vector<QVector> rows, Prime p) {
  for (auto& r : rows) {
    long m = min_valuation(r, p);
    if (m == kInfiniteValuation) throw DimensionError("saturate: zero row");
    Rational s = p_power(p, -m);
    for (auto& x : r) x *= s;
  }
  const std::uint64_t q = p.value();
  const Rational inv_p(Integer(1), p.as_integer());
  auto inverse_mod = [q](std::uint64_t a) {
    std::uint64_t r = 1, e = q - 2;
    while (e) {
      if (e & 1) r = r * a % q;
      a = a * a % q;
      e >>= 1;
    }
    return r;
  };

  while (true) {
    struct Reduced {
      std::size_t col;
      std::vector<std::uint64_t> row;
      std::vector<std::uint64_t> track;
    };
    std::vector<Reduced> reduced;
    bool changed = false;
    for (std::size_t i = 0; i < rows.size() && !changed; ++i) {
      std::vector<std::uint64_t> r(rows[i].size());
      for (std::size_t j = 0; j < r.size(); ++j) r[j] = residue(rows[i][j], p, 1).get_ui();
      std::vector<std::uint64_t> t(rows.size(), 0);
      t[i] = 1;
      for (const auto& red : reduced) {
        if (r[red.col] == 0) continue;
        std::uint64_t f = r[red.col] * inverse_mod(red.row[red.col]) % q;
        for (std::size_t j = 0; j < r.size(); ++j) r[j] = (r[j] + (q - f) * red.row[j]) % q;
        for (std::size_t j = 0; j < t.size(); ++j) t[j] = (t[j] + (q - f) * red.track[j]) % q;
      }
      auto lead = std::find_if(r.begin(), r.end(), [](std::uint64_t x) { return x != 0; });
      if (lead != r.end()) {
        reduced.push_back({static_cast<std::size_t>(lead - r.begin()), std::move(r), std::move(t)});
        continue;
      }
      // Σ t_j rows_j ≡ 0 mod p with t_i = 1: replace row i by the quotient.
      QVector combo(rows[i].size());
      for (std::size_t j = 0; j < rows.size(); ++j) {
        if (t[j] == 0) continue;
        Rational c(static_cast<unsigned long>(t[j]));
        for (std::size_t k = 0; k < combo.size(); ++k) combo[k] += c * rows[j][k];
      }
      for (auto& x : combo) x *= inv_p;
      if (min_valuation(combo, p) == kInfiniteValuation)
        throw DimensionError("saturate: rows are linearly dependent");
      rows[i] = std::move(combo);
      changed = true;
    }
    if (!changed) return rows;
  }
}

// ------------------------------------------------------------- DvrLattice

DvrLattice echelon_lattice(std::span<const QVector> generators, std::size_t ambient_rank, Prime p) {
  std::vector<QVector> rows;
  rows.reserve(generators.size());
  for (const auto& g : generators) {
    if (g.size() != ambient_rank) throw DimensionError("generator length does not match ambient rank");
    for (const auto& x : g)
      if (!is_p_integral(x, p)) throw NonIntegralError("lattice generator entry " + x.get_str());
    rows.push_back(g);
  }

  DvrLattice out(p, ambient_rank);
  std::size_t start = 0;
  for (std::size_t col = 0; col < ambient_rank && start < rows.size(); ++col) {
    std::size_t best = rows.size();
    long best_val = kInfiniteValuation;
    for (std::size_t i = start; i < rows.size(); ++i) {
      long v = valuation(rows[i][col], p);
      if (v < best_val) {
        best_val = v;
        best = i;
      }
    }
    if (best == rows.size()) continue;
    std::swap(rows[start], rows[best]);
    QVector& piv = rows[start];
    Rational scale = 1 / unit_part(piv[col], p);
    for (auto& x : piv) x *= scale;
    const Rational pe = p_power(p, best_val);
    for (std::size_t i = start + 1; i < rows.size(); ++i)
      if (rows[i][col] != 0) axpy(rows[i], rows[i][col] / pe, piv);
    for (std::size_t i = 0; i < start; ++i) {
      if (rows[i][col] == 0) continue;
      Rational r(residue(rows[i][col], p, static_cast<unsigned long>(best_val)));
      Rational quotient = (rows[i][col] - r) / pe;
      if (quotient != 0) axpy(rows[i], quotient, piv);
    }
    out.pivots_.push_back({col, best_val});
    ++start;
  }
  rows.resize(start);
  out.basis_ = std::move(rows);
  return out;
}

std::vector<long> DvrLattice::pivot_exponents() const {
  std::vector<long> out;
  for (const auto& pv : pivots_) out.push_back(pv.exponent);
  return out;
}

std::vector<long> DvrLattice::elementary_divisors() const {
  std::vector<QVector> m = basis_;
  const std::size_t k = m.size();
  std::vector<long> out;
  for (std::size_t t = 0; t < k; ++t) {
    std::size_t bi = t, bj = 0;
    long bv = kInfiniteValuation;
    for (std::size_t i = t; i < k; ++i)
      for (std::size_t j = t; j < ambient_rank_; ++j) {
        long v = valuation(m[i][j], prime_);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
        }
      }
    if (bv == kInfiniteValuation) break;
    std::swap(m[t], m[bi]);
    for (auto& r : m) std::swap(r[t], r[bj]);
    const Rational pivot = m[t][t];
    for (std::size_t i = t + 1; i < k; ++i)
      if (m[i][t] != 0) axpy(m[i], m[i][t] / pivot, m[t]);
    for (std::size_t j = t + 1; j < ambient_rank_; ++j) {
      if (m[t][j] == 0) continue;
      Rational f = m[t][j] / pivot;
      for (std::size_t i = t; i < k; ++i) m[i][j] -= f * m[i][t];
    }
    out.push_back(bv);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<long> DvrLattice::colength() const {
  if (!is_full()) return std::nullopt;
  long sum = 0;
  for (const auto& pv : pivots_) sum += pv.exponent;
  return sum;
}

bool DvrLattice::is_full() const { return basis_.size() == ambient_rank_; }

DvrLattice DvrLattice::project_prefix(std::size_t count) const {
  if (count > ambient_rank_) throw DimensionError("projection longer than ambient rank");
  std::vector<QVector> gens;
  for (const auto& b : basis_) gens.emplace_back(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(count));
  return echelon_lattice(gens, count, prime_);
}

bool DvrLattice::contains(const DvrLattice& other) const {
  if (other.ambient_rank_ != ambient_rank_) throw DimensionError("lattices in different ambient ranks");
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [this](const QVector& v) { return lattice_membership(v, *this).has_value(); });
}

std::optional<QVector> lattice_membership(const QVector& v, const DvrLattice& lattice) {
  if (v.size() != lattice.ambient_rank()) throw DimensionError("query vector rank mismatch");
  const Prime p = lattice.prime();
  QVector rem = v;
  QVector coeffs(lattice.rank());
  for (std::size_t j = 0; j < lattice.rank(); ++j) {
    const auto& pv = lattice.pivots()[j];
    Rational c = rem[pv.coordinate] / p_power(p, pv.exponent);
    if (!is_p_integral(c, p)) return std::nullopt;
    if (c != 0) axpy(rem, c, lattice.basis()[j]);
    coeffs[j] = std::move(c);
  }
  if (std::any_of(rem.begin(), rem.end(), [](const Rational& x) { return x != 0; })) return std::nullopt;
  return coeffs;
}

QVector combine(std::span<const QVector> basis, const QVector& coefficients) {
  if (basis.size() != coefficients.size()) throw DimensionError("certificate length mismatch");
  if (basis.empty()) return {};
  QVector out(basis.front().size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += coefficients[j] * basis[j][i];
  return out;
}

// -------------------------------------------------------------- commutant

Commutant commutant(std::span<const QMatrix> mats, std::size_t size, Prime p) {
  const std::size_t k = size;
  const std::size_t unknowns = k * k;
  QMatrix system(mats.size() * unknowns, unknowns);
  for (std::size_t m = 0; m < mats.size(); ++m) {
    const QMatrix& mat = mats[m];
    if (mat.rows() != k || mat.cols() != k) throw DimensionError("commutant: matrix size mismatch");
    // Row (a,b) of XM - MX = Σ_c X[a][c] M[c][b] - Σ_c M[a][c] X[c][b].
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        const std::size_t row = m * unknowns + a * k + b;
        for (std::size_t c = 0; c < k; ++c) {
          system(row, a * k + c) += mat(c, b);
          system(row, c * k + b) -= mat(a, c);
        }
      }
  }
  auto ker = kernel(system);
  Commutant out;
  out.size = k;
  if (ker.empty()) return out;
  auto lattice = echelon_lattice(saturate(std::move(ker), p), unknowns, p);
  for (const auto& v : lattice.basis()) {
    QMatrix x(k, k);
    for (std::size_t i = 0; i < unknowns; ++i) x(i / k, i % k) = v[i];
    out.basis.push_back(std::move(x));
  }
  return out;
}

}  // namespace bpops
