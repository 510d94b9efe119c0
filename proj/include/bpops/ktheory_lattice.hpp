#pragma once

// Finite windows of the ring S_g of coefficient-action sequences of additive
// degree-zero operations on the Adams summand g, computed as the stabilized
// Z_(p)-span of Adams-operation windows.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpops/bp_hopf.hpp"
#include "bpops/dvr.hpp"
#include "bpops/execution.hpp"

namespace bpops {

/// (μ_0, …, μ_N) with every entry in Z_(p).
struct SequenceWindow {
  Prime prime;
  std::vector<PAdicScalar> entries;

  std::size_t length() const { return entries.size(); }
  QVector values() const;
};

/// (k^{(p-1)i})_{i=0..N}, with 0^0 = 1.
SequenceWindow adams_sequence(const PAdicScalar& k, std::uint64_t max_weight);

/// Smallest positive integer that is a primitive root modulo p².
std::uint32_t default_topological_generator(Prime p);

struct SgCaps {
  /// Largest exponent a of q^a; defaults to N + 8.
  std::optional<unsigned> max_q_exponent;
  /// Largest exponent s of p^s.
  unsigned max_p_exponent = 3;
  /// Rounds without change required to declare stabilization.
  unsigned margin = 4;
  /// Overrides the default topological generator.
  std::optional<std::uint32_t> q;
};

class StabilizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StabilizationCertificate {
  std::uint32_t q = 0;
  unsigned q_exponent_cap = 0;
  unsigned p_exponent_cap = 0;
  unsigned margin = 0;
  /// Round whose generators last changed the echelon form.
  unsigned last_change_round = 0;
  unsigned rounds = 0;
  std::size_t generators = 0;
};

struct SgWindow {
  DvrLattice lattice;
  StabilizationCertificate certificate;
};

/// Echelon form of span{ adams_sequence(p^s q^a) } ∪ { adams_sequence(0) }.
/// Round t adds every generator with max(a, s) = t; the form is returned once
/// `margin` consecutive rounds leave it unchanged. Throws StabilizationError
/// if the caps are reached first.
SgWindow sg_window(std::uint64_t max_weight, Prime p, const SgCaps& caps = {}, Execution exec = Execution::parallel);

/// Certificate over the window's echelon basis, re-verified by exact expansion.
/// Throws DimensionError on a length mismatch.
std::optional<QVector> sg_membership(const SequenceWindow& w, const SgWindow& sg);

struct LatticeComparison {
  std::uint64_t max_weight = 0;
  std::size_t height = 0;
  std::vector<long> sg_divisors;
  std::vector<long> diagonal_divisors;
  std::vector<long> sg_pivots;
  std::vector<long> diagonal_pivots;
  bool sg_in_diagonal = false;
  /// An S_g basis vector outside the diagonal lattice, when inclusion fails.
  std::optional<QVector> witness;
  bool diagonal_in_sg = false;
  /// Colength of the smaller lattice inside the larger, when one contains the other.
  std::optional<long> gap;
  StabilizationCertificate certificate;
};

/// Compares sg_window(N) with diagonal_window_lattice(N, n).
LatticeComparison compare_with_diagonal_window(std::uint64_t max_weight, std::size_t n, const EtaRTable& table,
                                               const SgCaps& caps = {}, Execution exec = Execution::parallel);

}  // namespace bpops
