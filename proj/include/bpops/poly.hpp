#pragma once

// Sparse exact polynomials in the v-, t- and m-generators.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bpops/dvr.hpp"
#include "bpops/execution.hpp"
#include "bpops/monomial.hpp"

namespace bpops {

/// v^v · t^t · m^m. Ordered by t-part, then v-part, then m-part (each right-lex).
struct MonomialKey {
  ExponentSeq v;
  ExponentSeq t;
  ExponentSeq m;

  friend std::strong_ordering operator<=>(const MonomialKey& a, const MonomialKey& b) {
    if (auto c = a.t <=> b.t; c != 0) return c;
    if (auto c = a.v <=> b.v; c != 0) return c;
    return a.m <=> b.m;
  }
  friend bool operator==(const MonomialKey&, const MonomialKey&) = default;

  std::uint64_t weight(Prime p) const { return bpops::weight(v, p) + bpops::weight(t, p) + bpops::weight(m, p); }
  std::string to_string() const;
};

MonomialKey operator*(const MonomialKey& a, const MonomialKey& b);

/// Finitely supported map from monomials to non-zero rationals. Coefficients
/// are rational so that the m-generators can be carried; integrality is
/// checked separately.
class GradedPoly {
 public:
  using Terms = std::map<MonomialKey, Rational>;

  explicit GradedPoly(Prime p) : prime_(p) {}

  static GradedPoly constant(const Rational& c, Prime p);
  static GradedPoly monomial(MonomialKey key, const Rational& c, Prime p);
  static GradedPoly v_monomial(ExponentSeq v, const Rational& c, Prime p) { return monomial({std::move(v), {}, {}}, c, p); }
  static GradedPoly t_monomial(ExponentSeq t, const Rational& c, Prime p) { return monomial({{}, std::move(t), {}}, c, p); }

  Prime prime() const { return prime_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const MonomialKey& key, const Rational& c);
  Rational coefficient(const MonomialKey& key) const;

  /// Common weight of all terms; nullopt for zero. Throws if inhomogeneous.
  std::optional<std::uint64_t> weight() const;
  bool is_homogeneous() const;
  bool involves_m() const;

  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);
  GradedPoly& operator*=(const Rational& s);
  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator*(GradedPoly a, const Rational& s) { return a *= s; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
  friend bool operator==(const GradedPoly& a, const GradedPoly& b) {
    return a.prime_ == b.prime_ && a.terms_ == b.terms_;
  }

  /// Replaces each m_i by the given polynomial (index i-1 of m_values).
  GradedPoly substitute_m(std::span<const GradedPoly> m_values) const;
  /// The v-polynomial c with this = Σ_β c_β t^β, at the given β.
  GradedPoly coefficient_of_t(const ExponentSeq& beta) const;
  /// Image under t_i ↦ 0.
  GradedPoly set_t_zero() const;
  /// Coefficients of monomials involving t only.
  std::map<ExponentSeq, Rational> pure_t_part() const;

  std::string to_string() const;

 private:
  Prime prime_;
  Terms terms_;
};

/// Product with a selectable kernel; the parallel kernel splits the left
/// operand across threads and merges thread-local partial sums.
GradedPoly multiply(const GradedPoly& a, const GradedPoly& b, Execution exec);
GradedPoly power(const GradedPoly& a, unsigned long e, Execution exec = Execution::serial);

struct IntegralityReport {
  bool integral = true;
  std::vector<std::pair<MonomialKey, Rational>> offenders;
};

/// True iff every coefficient has non-negative p-valuation; lists offenders.
IntegralityReport check_integrality(const GradedPoly& poly);

}  // namespace bpops
