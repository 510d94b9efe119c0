#pragma once

// BP<n> at the level of coefficients: the splitting of each weight of BP_*
// into R = Z_(p)[v_1..v_n] and J = J_n, elementary operations projected to
// the R-block, commutants, and the lattice of diagonal windows.

#include <cstdint>
#include <utility>
#include <vector>

#include "bpops/bp_hopf.hpp"
#include "bpops/dvr.hpp"
#include "bpops/execution.hpp"
#include "bpops/op_calculus.hpp"

namespace bpops {

struct BlockSplit {
  std::uint64_t weight = 0;
  std::size_t height = 0;
  std::vector<ExponentSeq> basis;
  /// Positions in `basis` of monomials outside J_n, ascending.
  std::vector<std::size_t> r_indices;
  /// Positions in `basis` of monomials in J_n, ascending.
  std::vector<std::size_t> j_indices;
};

/// Partition of the weight-r basis by membership in J_n. Certifies that every
/// R monomial precedes every J monomial; a violation throws InternalConsistencyError.
BlockSplit block_split(std::uint64_t r, std::size_t n, Prime p);

/// R-block restriction of the realization μ̄·E_{α,β}. The realized operation
/// vanishes on every J column, so the restriction is its BP<n> action.
/// Throws std::invalid_argument if α or β lies in J_n.
QMatrix projected_elementary(const ExponentSeq& alpha, const ExponentSeq& beta, std::size_t n,
                             const EtaRTable& table);

/// Commutant of all projected elementary realizations of weight r.
Commutant centre_commutant(std::uint64_t r, std::size_t n, const EtaRTable& table,
                           Execution exec = Execution::parallel);

/// Windows (μ_0..μ_N) of Z_(p)-combinations of stable_generators(N) that, in
/// every weight r ≤ N, preserve the J-block and act as μ_r on the R-block
/// modulo J.
DvrLattice diagonal_window_lattice(std::uint64_t max_weight, std::size_t n, const EtaRTable& table,
                                   Execution exec = Execution::parallel);

/// Finite combination Σ coeff·Ψ^k, as (k, coeff) pairs.
using AdamsCombination = std::vector<std::pair<PAdicScalar, PAdicScalar>>;

/// Σ coeff·k^{(p-1)r} for r = 0..N.
QVector adams_combination_window(const AdamsCombination& combination, std::uint64_t max_weight, Prime p);

/// The action of ι̂_n(Σ coeff·Ψ^k) on the R-block of each weight r ≤ N.
std::vector<QMatrix> iota_hat_n_window(const AdamsCombination& combination, std::uint64_t max_weight, std::size_t n,
                                       Prime p);

}  // namespace bpops
