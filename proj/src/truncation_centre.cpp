#include "bpops/truncation_centre.hpp"

#include <exception>
#include <stdexcept>

namespace bpops {

BlockSplit block_split(std::uint64_t r, std::size_t n, Prime p) {
  if (n == 0) throw std::invalid_argument("block_split: height must be at least 1");
  BlockSplit split{r, n, enumerate_weight(r, p), {}, {}};
  for (std::size_t i = 0; i < split.basis.size(); ++i)
    (in_ideal(split.basis[i], n) ? split.j_indices : split.r_indices).push_back(i);
  if (!split.r_indices.empty() && !split.j_indices.empty()) {
    const auto& last_r = split.basis[split.r_indices.back()];
    const auto& first_j = split.basis[split.j_indices.front()];
    if (!(last_r < first_j))
      throw InternalConsistencyError("block order violated at weight " + std::to_string(r) + ": " +
                                     last_r.to_string() + " is not below " + first_j.to_string());
  }
  return split;
}

QMatrix projected_elementary(const ExponentSeq& alpha, const ExponentSeq& beta, std::size_t n,
                             const EtaRTable& table) {
  if (in_ideal(alpha, n) || in_ideal(beta, n))
    throw std::invalid_argument("projected_elementary: (" + alpha.to_string() + "," + beta.to_string() +
                                ") not in the R-block");
  const Prime p = table.prime();
  const Realization re = elementary_realize(alpha, beta, table);
  const BlockSplit split = block_split(re.matrix.weight, n, p);
  for (std::size_t j : split.j_indices)
    for (std::size_t i = 0; i < re.matrix.size(); ++i)
      if (re.matrix.entries(i, j) != 0)
        throw InternalConsistencyError("projected_elementary: realization does not vanish on J");
  return re.matrix.entries.restrict_to(split.r_indices);
}

Commutant centre_commutant(std::uint64_t r, std::size_t n, const EtaRTable& table, Execution exec) {
  const BlockSplit split = block_split(r, n, table.prime());
  const long k = static_cast<long>(split.r_indices.size());
  std::vector<QMatrix> family(static_cast<std::size_t>(k * k));
  std::vector<std::exception_ptr> errors(family.size());
#pragma omp parallel for collapse(2) schedule(dynamic, 1) if (exec == Execution::parallel)
  for (long a = 0; a < k; ++a)
    for (long b = 0; b < k; ++b) {
      const auto slot = static_cast<std::size_t>(a * k + b);
      try {
        family[slot] = projected_elementary(split.basis[split.r_indices[static_cast<std::size_t>(a)]],
                                            split.basis[split.r_indices[static_cast<std::size_t>(b)]], n, table);
      } catch (...) {
        errors[slot] = std::current_exception();
      }
    }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return commutant(family, static_cast<std::size_t>(k), table.prime());
}

DvrLattice diagonal_window_lattice(std::uint64_t max_weight, std::size_t n, const EtaRTable& table, Execution exec) {
  const Prime p = table.prime();
  if (max_weight > table.max_weight()) throw std::out_of_range("diagonal_window_lattice: window exceeds table bound");
  const auto gens = stable_generators(max_weight, p);
  const std::size_t g_count = gens.size();
  const std::size_t weights = max_weight + 1;

  std::vector<BlockSplit> splits;
  for (std::uint64_t r = 0; r <= max_weight; ++r) splits.push_back(block_split(r, n, p));

  // actions[r * g_count + g] = matrix of generator g on weight r.
  std::vector<QMatrix> actions(weights * g_count);
  const long total = static_cast<long>(actions.size());
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel)
  for (long i = 0; i < total; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    actions[idx] = action_matrix(gens[idx % g_count], idx / g_count, table).entries;
  }

  std::vector<QVector> rows;
  auto coefficient_row = [&](std::uint64_t r, std::size_t i, std::size_t j) {
    QVector row(g_count);
    for (std::size_t g = 0; g < g_count; ++g) row[g] = actions[r * g_count + g](i, j);
    return row;
  };
  for (std::uint64_t r = 0; r <= max_weight; ++r) {
    const BlockSplit& s = splits[r];
    const std::size_t lead = s.r_indices.front();
    const QVector lead_row = coefficient_row(r, lead, lead);
    for (std::size_t i : s.r_indices) {
      for (std::size_t j : s.j_indices) rows.push_back(coefficient_row(r, i, j));
      for (std::size_t j : s.r_indices) {
        if (i != j) {
          rows.push_back(coefficient_row(r, i, j));
        } else if (i != lead) {
          QVector row = coefficient_row(r, i, i);
          for (std::size_t g = 0; g < g_count; ++g) row[g] -= lead_row[g];
          rows.push_back(std::move(row));
        }
      }
    }
  }

  QMatrix system(rows.size(), g_count);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t g = 0; g < g_count; ++g) system(i, g) = rows[i][g];

  std::vector<QVector> windows;
  auto solutions = kernel(system);
  if (!solutions.empty()) {
    for (const auto& c : saturate(std::move(solutions), p)) {
      QVector window(weights);
      for (std::uint64_t r = 0; r <= max_weight; ++r) {
        const std::size_t lead = splits[r].r_indices.front();
        for (std::size_t g = 0; g < g_count; ++g) window[r] += c[g] * actions[r * g_count + g](lead, lead);
      }
      windows.push_back(std::move(window));
    }
  }
  return echelon_lattice(windows, weights, p);
}

QVector adams_combination_window(const AdamsCombination& combination, std::uint64_t max_weight, Prime p) {
  QVector out(max_weight + 1);
  for (const auto& [k, coeff] : combination) {
    if (!(k.prime() == p) || !(coeff.prime() == p)) throw std::invalid_argument("Adams combination over another prime");
    for (std::uint64_t r = 0; r <= max_weight; ++r) out[r] += coeff.value() * adams_scalar(k, r);
  }
  return out;
}

std::vector<QMatrix> iota_hat_n_window(const AdamsCombination& combination, std::uint64_t max_weight, std::size_t n,
                                       Prime p) {
  const QVector scalars = adams_combination_window(combination, max_weight, p);
  std::vector<QMatrix> out;
  for (std::uint64_t r = 0; r <= max_weight; ++r)
    out.push_back(QMatrix::scalar(block_split(r, n, p).r_indices.size(), scalars[r]));
  return out;
}

}  // namespace bpops
