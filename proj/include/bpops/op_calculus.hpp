#pragma once

// Stable degree-zero BP operations, represented as BP_*-linear functionals on
// t-monomials, and their matrix actions on each weight of BP_*.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bpops/bp_hopf.hpp"
#include "bpops/dvr.hpp"
#include "bpops/execution.hpp"
#include "bpops/monomial.hpp"
#include "bpops/poly.hpp"

namespace bpops {

/// A functional BP_*(BP) → BP_*, given by its values on t-monomials. Its
/// action on homotopy is v^γ ↦ Σ_β value(β)·c_{γ,β}.
struct OpFunctional {
  std::string name;
  /// Weight of the t-monomials minus the weight of their values.
  std::int64_t degree_shift = 0;
  std::map<ExponentSeq, GradedPoly> values;
};

/// The dual functional to t^β: 1 on t^β, 0 on every other monomial.
OpFunctional phi_beta(const ExponentSeq& beta, Prime p);
/// v^α·φ_β; requires weight(α) = weight(β). Throws std::invalid_argument otherwise.
OpFunctional phi_alpha_beta(const ExponentSeq& alpha, const ExponentSeq& beta, Prime p);
/// φ_∅, which acts as the identity.
OpFunctional counit(Prime p);

/// Exact matrix of an action on the weight-r part of BP_*; entry (α, γ) is the
/// coefficient of v^α in the image of v^γ. Basis in right-lex order.
struct DegreeMatrix {
  std::uint64_t weight = 0;
  std::vector<ExponentSeq> basis;
  QMatrix entries;

  std::size_t size() const { return basis.size(); }
  std::size_t index_of(const ExponentSeq& a) const;
};

/// Action of a degree-zero functional on weight r. Throws std::invalid_argument
/// for non-zero degree shift and std::out_of_range beyond the table bound.
DegreeMatrix action_matrix(const OpFunctional& op, std::uint64_t r, const EtaRTable& table);

/// k^{(p-1)r}·I of the given size, with 0^0 = 1.
QMatrix adams_matrix(const PAdicScalar& k, std::uint64_t r, std::size_t size);
Rational adams_scalar(const PAdicScalar& k, std::uint64_t r);

/// Σ_γ coefficients[γ]·M_{α,γ} = mu_bar·E_{α,β} on the full weight-r basis.
struct Realization {
  ExponentSeq alpha;
  ExponentSeq beta;
  PAdicScalar mu_bar;
  std::map<ExponentSeq, Rational> coefficients;
  /// The combination re-multiplied from the operations' action matrices.
  DegreeMatrix matrix;
};

/// Solves the lower-triangular system for the combination, scaled so that
/// mu_bar is the least p-power making every coefficient p-integral. The
/// result is re-multiplied and checked; a mismatch throws InternalConsistencyError.
Realization elementary_realize(const ExponentSeq& alpha, const ExponentSeq& beta, const EtaRTable& table);

/// Every same-weight pair (α, β) of weight r, realized.
std::vector<Realization> realize_weight(std::uint64_t r, const EtaRTable& table, Execution exec);

/// φ_{α,β} for all weight(α) = weight(β) ≤ N; the weight-0 pair is the counit.
std::vector<OpFunctional> stable_generators(std::uint64_t max_weight, Prime p);

}  // namespace bpops
