#pragma once

// BP_* = Z_(p)[v_1, v_2, …] with Hazewinkel generators and the right unit
// η_R : BP_* → BP_*(BP) = BP_*[t_1, t_2, …].

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bpops/dvr.hpp"
#include "bpops/execution.hpp"
#include "bpops/monomial.hpp"
#include "bpops/poly.hpp"

namespace bpops {

/// Throws std::invalid_argument unless p is an odd prime.
Prime require_odd_prime(std::uint32_t p);

/// The rational logarithm coefficient m_k as a polynomial in v_1..v_k, from
/// p·m_k = Σ_{0≤i<k} m_i v_{k-i}^{p^i}, m_0 = 1.
GradedPoly hazewinkel_m(unsigned k, Prime p);

/// η_R(m_k) = Σ_{i+j=k} m_i t_j^{p^i} with m_i kept symbolic (m_0 = t_0 = 1).
GradedPoly eta_r_m_symbolic(unsigned k, Prime p);

/// Table of η_R(v^γ) for every γ of weight ≤ max_weight. Immutable once
/// built, so concurrent reads are safe.
class EtaRTable {
 public:
  static constexpr std::string_view kConvention = "hazewinkel";

  /// Computes η_R(v_k) for each generator, then every monomial level by
  /// level; entries within a weight are independent and run in parallel.
  static EtaRTable build(Prime p, std::uint64_t max_weight, Execution exec = Execution::parallel);

  Prime prime() const { return prime_; }
  std::uint64_t max_weight() const { return max_weight_; }
  const std::map<ExponentSeq, GradedPoly>& entries() const { return entries_; }

  /// η_R(v^γ). Throws std::out_of_range beyond the weight bound.
  const GradedPoly& eta(const ExponentSeq& gamma) const;

  nlohmann::json to_json() const;
  /// Parses and validates a cache document (integrality, weights, coverage).
  static EtaRTable from_json(const nlohmann::json& doc);

  /// Serialized cache bytes; identical tables serialize identically.
  std::string serialize() const;
  void save(const std::filesystem::path& path) const;
  static EtaRTable load(const std::filesystem::path& path);

  friend bool operator==(const EtaRTable& a, const EtaRTable& b) {
    return a.prime_ == b.prime_ && a.max_weight_ == b.max_weight_ && a.entries_ == b.entries_;
  }

 private:
  EtaRTable(Prime p, std::uint64_t max_weight) : prime_(p), max_weight_(max_weight) {}

  Prime prime_;
  std::uint64_t max_weight_;
  std::map<ExponentSeq, GradedPoly> entries_;
};

/// η_R(v^γ) looked up in the table.
const GradedPoly& eta_r_v(const ExponentSeq& gamma, const EtaRTable& table);

/// The v-polynomial c_{γ,β} with η_R(v^γ) = Σ_β c_{γ,β} t^β.
GradedPoly coefficient_of_t(const ExponentSeq& gamma, const ExponentSeq& beta, const EtaRTable& table);

/// Scalar c_{γ,β} for weight(γ) = weight(β).
Rational mu(const ExponentSeq& gamma, const ExponentSeq& beta, const EtaRTable& table);

/// Default cache file name for a (p, convention, weight bound) triple.
std::string default_cache_name(Prime p, std::uint64_t max_weight);

}  // namespace bpops
