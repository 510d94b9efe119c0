#pragma once

// Exponent sequences indexing monomials v^α (or t^α) and their
// right-lexicographic order.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "bpops/dvr.hpp"

namespace bpops {

/// Finite sequence (α_1, …, α_m) of non-negative exponents with α_m ≠ 0 (or
/// empty). Indices are 1-based to match v_1, v_2, …; entries past the end read
/// as zero.
class ExponentSeq {
 public:
  ExponentSeq() = default;
  ExponentSeq(std::initializer_list<unsigned> entries) : ExponentSeq(std::vector<unsigned>(entries)) {}
  explicit ExponentSeq(std::vector<unsigned> entries);

  /// The sequence of v_index^power.
  static ExponentSeq generator(std::size_t index, unsigned power = 1);

  std::size_t length() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  unsigned at(std::size_t index) const { return index >= 1 && index <= entries_.size() ? entries_[index - 1] : 0; }
  const std::vector<unsigned>& entries() const { return entries_; }
  /// Σ α_i, the number of generator factors.
  unsigned long total_exponent() const;

  /// Right-lexicographic order: compared as if padded with zeros, from the
  /// highest index down. A shorter sequence is therefore smaller.
  friend std::strong_ordering operator<=>(const ExponentSeq& a, const ExponentSeq& b);
  friend bool operator==(const ExponentSeq& a, const ExponentSeq& b) = default;

  std::string to_string() const;

 private:
  std::vector<unsigned> entries_;
};

std::strong_ordering compare(const ExponentSeq& a, const ExponentSeq& b);

/// Placewise sum: v^α v^β = v^{α+β}.
ExponentSeq add(const ExponentSeq& a, const ExponentSeq& b);

/// Placewise difference; requires b ≤ a entrywise.
ExponentSeq subtract(const ExponentSeq& a, const ExponentSeq& b);

/// Weight of v_i: 1 + p + … + p^{i-1}.
std::uint64_t generator_weight(std::size_t index, Prime p);

/// Σ α_i · weight(v_i); the topological degree is 2(p-1) times this.
std::uint64_t weight(const ExponentSeq& a, Prime p);

/// Largest i with weight(v_i) ≤ r (0 when r = 0).
std::size_t max_generator_index(std::uint64_t r, Prime p);

/// All α of weight r using v_1..v_{max_index}, ascending.
std::vector<ExponentSeq> enumerate_weight(std::uint64_t r, std::size_t max_index, Prime p);
std::vector<ExponentSeq> enumerate_weight(std::uint64_t r, Prime p);

/// True iff v^α lies in J_n = (v_{n+1}, v_{n+2}, …).
bool in_ideal(const ExponentSeq& a, std::size_t n);

}  // namespace bpops
