#include "bpops/op_calculus.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <stdexcept>

namespace bpops {

OpFunctional phi_beta(const ExponentSeq& beta, Prime p) {
  OpFunctional op;
  op.name = beta.empty() ? "counit" : "phi_" + beta.to_string();
  op.degree_shift = static_cast<std::int64_t>(weight(beta, p));
  op.values.emplace(beta, GradedPoly::constant(1, p));
  return op;
}

OpFunctional phi_alpha_beta(const ExponentSeq& alpha, const ExponentSeq& beta, Prime p) {
  if (weight(alpha, p) != weight(beta, p))
    throw std::invalid_argument("phi_alpha_beta: weights of " + alpha.to_string() + " and " + beta.to_string() +
                                " differ");
  OpFunctional op;
  op.name = alpha.empty() ? "counit" : "phi_{" + alpha.to_string() + "," + beta.to_string() + "}";
  op.values.emplace(beta, GradedPoly::v_monomial(alpha, 1, p));
  return op;
}

OpFunctional counit(Prime p) { return phi_beta({}, p); }

std::size_t DegreeMatrix::index_of(const ExponentSeq& a) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), a);
  if (it == basis.end() || *it != a) throw std::out_of_range(a.to_string() + " is not in the weight-" +
                                                              std::to_string(weight) + " basis");
  return static_cast<std::size_t>(it - basis.begin());
}

DegreeMatrix action_matrix(const OpFunctional& op, std::uint64_t r, const EtaRTable& table) {
  if (op.degree_shift != 0) throw std::invalid_argument("action_matrix: " + op.name + " is not degree zero");
  if (r > table.max_weight())
    throw std::out_of_range("action_matrix: weight " + std::to_string(r) + " exceeds table bound");
  const Prime p = table.prime();
  DegreeMatrix out{r, enumerate_weight(r, p), {}};
  out.entries = QMatrix(out.size(), out.size());
  for (std::size_t col = 0; col < out.size(); ++col) {
    const GradedPoly& eta = table.eta(out.basis[col]);
    for (const auto& [beta, value] : op.values) {
      GradedPoly c = eta.coefficient_of_t(beta);
      if (c.is_zero()) continue;
      const GradedPoly image = value * c;
      for (const auto& [key, coeff] : image.terms()) out.entries(out.index_of(key.v), col) += coeff;
    }
  }
  return out;
}

Rational adams_scalar(const PAdicScalar& k, std::uint64_t r) {
  const std::uint64_t e = (k.prime().value() - 1) * r;
  if (e == 0) return 1;
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), k.value().get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), k.value().get_den_mpz_t(), e);
  out.canonicalize();
  return out;
}

QMatrix adams_matrix(const PAdicScalar& k, std::uint64_t r, std::size_t size) {
  return QMatrix::scalar(size, adams_scalar(k, r));
}

Realization elementary_realize(const ExponentSeq& alpha, const ExponentSeq& beta, const EtaRTable& table) {
  const Prime p = table.prime();
  const std::uint64_t r = weight(alpha, p);
  if (weight(beta, p) != r) throw std::invalid_argument("elementary_realize: weights differ");
  if (r > table.max_weight()) throw std::out_of_range("elementary_realize: weight exceeds table bound");

  const auto basis = enumerate_weight(r, p);
  const auto first = std::lower_bound(basis.begin(), basis.end(), beta);
  const std::vector<ExponentSeq> upper(first, basis.end());

  // Σ_{γ≥β} x_γ μ_{δ,γ} = [δ = β] for δ ≥ β. With μ_{δ,γ} = 0 for δ < γ this
  // is lower triangular and solved by forward substitution.
  std::vector<Rational> x(upper.size());
  for (std::size_t d = 0; d < upper.size(); ++d) {
    Rational rhs = d == 0 ? 1 : 0;
    for (std::size_t g = 0; g < d; ++g) rhs -= mu(upper[d], upper[g], table) * x[g];
    const Rational diag = mu(upper[d], upper[d], table);
    if (diag == 0)
      throw InternalConsistencyError("elementary_realize: mu_{" + upper[d].to_string() + "," + upper[d].to_string() +
                                     "} vanishes");
    x[d] = rhs / diag;
  }

  long min_val = kInfiniteValuation;
  for (const auto& xi : x) min_val = std::min(min_val, valuation(xi, p));
  const Rational scale = min_val >= 0 ? Rational(1) : Rational(p.power(static_cast<unsigned long>(-min_val)));

  Realization out{alpha, beta, PAdicScalar(scale, p), {}, {r, basis, QMatrix(basis.size(), basis.size())}};
  for (std::size_t g = 0; g < upper.size(); ++g) {
    Rational c = x[g] * scale;
    if (c == 0) continue;
    out.matrix.entries += action_matrix(phi_alpha_beta(alpha, upper[g], p), r, table).entries * c;
    out.coefficients.emplace(upper[g], std::move(c));
  }

  const QMatrix target =
      QMatrix::elementary(basis.size(), out.matrix.index_of(alpha), out.matrix.index_of(beta)) * out.mu_bar.value();
  if (out.matrix.entries != target)
    throw InternalConsistencyError("elementary_realize: combination for (" + alpha.to_string() + "," +
                                   beta.to_string() + ") is not a multiple of E");
  return out;
}

std::vector<Realization> realize_weight(std::uint64_t r, const EtaRTable& table, Execution exec) {
  const auto basis = enumerate_weight(r, table.prime());
  const long n = static_cast<long>(basis.size());
  std::vector<std::optional<Realization>> slots(basis.size() * basis.size());
  std::vector<std::exception_ptr> errors(slots.size());
#pragma omp parallel for collapse(2) schedule(dynamic, 1) if (exec == Execution::parallel)
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      const auto slot = static_cast<std::size_t>(a * n + b);
      try {
        slots[slot] = elementary_realize(basis[static_cast<std::size_t>(a)], basis[static_cast<std::size_t>(b)], table);
      } catch (...) {
        errors[slot] = std::current_exception();
      }
    }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Realization> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<OpFunctional> stable_generators(std::uint64_t max_weight, Prime p) {
  std::vector<OpFunctional> out;
  for (std::uint64_t r = 0; r <= max_weight; ++r) {
    const auto basis = enumerate_weight(r, p);
    for (const auto& alpha : basis)
      for (const auto& beta : basis) out.push_back(phi_alpha_beta(alpha, beta, p));
  }
  return out;
}

}  // namespace bpops
