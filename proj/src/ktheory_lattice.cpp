#include "bpops/ktheory_lattice.hpp"

#include <algorithm>

#include "bpops/op_calculus.hpp"
#include "bpops/truncation_centre.hpp"

namespace bpops {

QVector SequenceWindow::values() const {
  QVector out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.value());
  return out;
}

SequenceWindow adams_sequence(const PAdicScalar& k, std::uint64_t max_weight) {
  SequenceWindow w{k.prime(), {}};
  for (std::uint64_t i = 0; i <= max_weight; ++i) w.entries.emplace_back(adams_scalar(k, i), k.prime());
  return w;
}

std::uint32_t default_topological_generator(Prime p) {
  const std::uint64_t p2 = std::uint64_t{p.value()} * p.value();
  const std::uint64_t order = std::uint64_t{p.value()} * (p.value() - 1);
  for (std::uint64_t q = 2; q < p2; ++q) {
    if (q % p.value() == 0) continue;
    std::uint64_t x = 1, ord = 0;
    do {
      x = x * q % p2;
      ++ord;
    } while (x != 1);
    if (ord == order) return static_cast<std::uint32_t>(q);
  }
  throw std::logic_error("no primitive root modulo p^2");
}

SgWindow sg_window(std::uint64_t max_weight, Prime p, const SgCaps& caps, Execution exec) {
  StabilizationCertificate cert;
  cert.q = caps.q.value_or(default_topological_generator(p));
  cert.q_exponent_cap = caps.max_q_exponent.value_or(static_cast<unsigned>(max_weight) + 8);
  cert.p_exponent_cap = caps.max_p_exponent;
  cert.margin = caps.margin;
  const std::size_t rank = max_weight + 1;

  std::vector<QVector> gens{adams_sequence(PAdicScalar(0, p), max_weight).values()};
  DvrLattice current = echelon_lattice(gens, rank, p);
  cert.generators = 1;
  const unsigned last_round = std::max(cert.q_exponent_cap, cert.p_exponent_cap);

  for (unsigned t = 0;; ++t) {
    if (t > last_round)
      throw StabilizationError("S_g window N=" + std::to_string(max_weight) + " did not stabilize within caps q^" +
                               std::to_string(cert.q_exponent_cap) + ", p^" + std::to_string(cert.p_exponent_cap) +
                               ", margin " + std::to_string(cert.margin));
    std::vector<Integer> ks;
    for (unsigned a = 0; a <= std::min(t, cert.q_exponent_cap); ++a)
      for (unsigned s = 0; s <= std::min(t, cert.p_exponent_cap); ++s) {
        if (std::max(a, s) != t) continue;
        Integer qa;
        mpz_ui_pow_ui(qa.get_mpz_t(), cert.q, a);
        ks.push_back(qa * p.power(s));
      }
    std::vector<QVector> fresh(ks.size());
    const long count = static_cast<long>(ks.size());
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (long i = 0; i < count; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      fresh[idx] = adams_sequence(PAdicScalar(Rational(ks[idx]), p), max_weight).values();
    }
    std::vector<QVector> combined = current.basis();
    combined.insert(combined.end(), fresh.begin(), fresh.end());
    DvrLattice next = echelon_lattice(combined, rank, p);
    cert.generators += ks.size();
    cert.rounds = t + 1;
    if (!(next == current)) {
      current = std::move(next);
      cert.last_change_round = t;
    }
    if (t - cert.last_change_round >= cert.margin) return {std::move(current), cert};
  }
}

std::optional<QVector> sg_membership(const SequenceWindow& w, const SgWindow& sg) {
  if (w.length() != sg.lattice.ambient_rank()) throw DimensionError("sg_membership: window length mismatch");
  const QVector values = w.values();
  auto cert = lattice_membership(values, sg.lattice);
  if (cert && combine(sg.lattice.basis(), *cert) != values)
    throw InternalConsistencyError("sg_membership: certificate does not reproduce the window");
  return cert;
}

LatticeComparison compare_with_diagonal_window(std::uint64_t max_weight, std::size_t n, const EtaRTable& table,
                                               const SgCaps& caps, Execution exec) {
  const SgWindow sg = sg_window(max_weight, table.prime(), caps, exec);
  const DvrLattice diag = diagonal_window_lattice(max_weight, n, table, exec);
  LatticeComparison out;
  out.max_weight = max_weight;
  out.height = n;
  out.certificate = sg.certificate;
  out.sg_divisors = sg.lattice.elementary_divisors();
  out.diagonal_divisors = diag.elementary_divisors();
  out.sg_pivots = sg.lattice.pivot_exponents();
  out.diagonal_pivots = diag.pivot_exponents();
  out.sg_in_diagonal = true;
  for (const auto& v : sg.lattice.basis())
    if (!lattice_membership(v, diag)) {
      out.sg_in_diagonal = false;
      out.witness = v;
      break;
    }
  out.diagonal_in_sg = sg.lattice.contains(diag);
  const auto sg_len = sg.lattice.colength();
  const auto diag_len = diag.colength();
  if (sg_len && diag_len) {
    if (out.sg_in_diagonal)
      out.gap = *sg_len - *diag_len;
    else if (out.diagonal_in_sg)
      out.gap = *diag_len - *sg_len;
  }
  return out;
}

}  // namespace bpops
