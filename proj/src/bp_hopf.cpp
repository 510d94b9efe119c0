#include "bpops/bp_hopf.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bpops {

namespace {

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

void require_integral(const GradedPoly& poly, const std::string& what) {
  auto report = check_integrality(poly);
  if (report.integral) return;
  const auto& [key, c] = report.offenders.front();
  throw InternalConsistencyError(what + " is not p-integral: coefficient " + c.get_str() + " on " + key.to_string());
}

nlohmann::json exponents_to_json(const ExponentSeq& e) { return nlohmann::json(e.entries()); }

ExponentSeq exponents_from_json(const nlohmann::json& j) {
  std::vector<unsigned> e = j.get<std::vector<unsigned>>();
  if (!e.empty() && e.back() == 0) throw std::invalid_argument("cache: exponent sequence has trailing zero");
  return ExponentSeq(std::move(e));
}

}  // namespace

Prime require_odd_prime(std::uint32_t p) {
  if (p == 2) throw std::invalid_argument("p must be an odd prime, got 2");
  return Prime(p);
}

GradedPoly hazewinkel_m(unsigned k, Prime p) {
  std::vector<GradedPoly> m{GradedPoly::constant(1, p)};
  const Rational inv_p(Integer(1), p.as_integer());
  for (unsigned j = 1; j <= k; ++j) {
    GradedPoly sum(p);
    for (unsigned i = 0; i < j; ++i)
      sum += m[i] * GradedPoly::v_monomial(ExponentSeq::generator(j - i, static_cast<unsigned>(ipow(p.value(), i))), 1, p);
    m.push_back(sum * inv_p);
  }
  return m[k];
}

GradedPoly eta_r_m_symbolic(unsigned k, Prime p) {
  GradedPoly out(p);
  for (unsigned i = 0; i <= k; ++i) {
    const unsigned j = k - i;
    ExponentSeq t = j == 0 ? ExponentSeq{} : ExponentSeq::generator(j, static_cast<unsigned>(ipow(p.value(), i)));
    ExponentSeq m = i == 0 ? ExponentSeq{} : ExponentSeq::generator(i);
    out.add_term({{}, std::move(t), std::move(m)}, 1);
  }
  return out;
}

EtaRTable EtaRTable::build(Prime p, std::uint64_t max_weight, Execution exec) {
  require_odd_prime(p.value());
  EtaRTable table(p, max_weight);
  const std::size_t top = max_generator_index(max_weight, p);

  std::vector<GradedPoly> m_values;
  for (unsigned k = 1; k <= top; ++k) m_values.push_back(hazewinkel_m(k, p));

  // η_R(v_k) = p·η_R(m_k) - Σ_{0<i<k} η_R(m_i)·η_R(v_{k-i})^{p^i}, then m ↦ v.
  std::vector<GradedPoly> gens{GradedPoly::constant(1, p)};
  for (unsigned k = 1; k <= top; ++k) {
    GradedPoly sym = eta_r_m_symbolic(k, p) * Rational(p.as_integer());
    for (unsigned i = 1; i < k; ++i)
      sym -= multiply(eta_r_m_symbolic(i, p), power(gens[k - i], ipow(p.value(), i), exec), exec);
    GradedPoly eta = sym.substitute_m(m_values);
    require_integral(eta, "eta_R(v_" + std::to_string(k) + ")");
    if (!eta.is_homogeneous() || eta.weight() != generator_weight(k, p))
      throw InternalConsistencyError("eta_R(v_" + std::to_string(k) + ") has the wrong weight");
    gens.push_back(std::move(eta));
  }

  table.entries_.emplace(ExponentSeq{}, GradedPoly::constant(1, p));
  for (std::uint64_t r = 1; r <= max_weight; ++r) {
    const auto level = enumerate_weight(r, p);
    std::vector<GradedPoly> results(level.size(), GradedPoly(p));
    const long n = static_cast<long>(level.size());
    const auto& known = table.entries_;
    // η_R(v^γ) = η_R(v^{γ - e_k}) · η_R(v_k) with k the top index of γ; the
    // left factor has strictly lower weight and is already present.
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel)
    for (long i = 0; i < n; ++i) {
      const ExponentSeq& gamma = level[static_cast<std::size_t>(i)];
      const std::size_t k = gamma.length();
      const ExponentSeq rest = subtract(gamma, ExponentSeq::generator(k));
      results[static_cast<std::size_t>(i)] = known.at(rest) * gens[k];
    }
    for (std::size_t i = 0; i < level.size(); ++i) {
      require_integral(results[i], "eta_R(v^" + level[i].to_string() + ")");
      table.entries_.emplace(level[i], std::move(results[i]));
    }
  }
  return table;
}

const GradedPoly& EtaRTable::eta(const ExponentSeq& gamma) const {
  auto it = entries_.find(gamma);
  if (it == entries_.end())
    throw std::out_of_range("eta_R(v^" + gamma.to_string() + ") exceeds table weight bound " +
                            std::to_string(max_weight_));
  return it->second;
}

nlohmann::json EtaRTable::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [gamma, poly] : entries_) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [key, c] : poly.terms()) {
      terms.push_back({{"v_exponents", exponents_to_json(key.v)},
                       {"t_exponents", exponents_to_json(key.t)},
                       {"coefficient_numerator", c.get_num().get_str()},
                       {"coefficient_denominator", c.get_den().get_str()}});
    }
    entries.push_back({{"v_exponents", exponents_to_json(gamma)}, {"terms", std::move(terms)}});
  }
  return {{"prime", prime_.value()},
          {"convention", std::string(kConvention)},
          {"max_weight", max_weight_},
          {"entries", std::move(entries)}};
}

EtaRTable EtaRTable::from_json(const nlohmann::json& doc) {
  if (doc.at("convention").get<std::string>() != kConvention)
    throw std::invalid_argument("cache: unsupported generator convention");
  const Prime p = require_odd_prime(doc.at("prime").get<std::uint32_t>());
  EtaRTable table(p, doc.at("max_weight").get<std::uint64_t>());
  for (const auto& entry : doc.at("entries")) {
    ExponentSeq gamma = exponents_from_json(entry.at("v_exponents"));
    GradedPoly poly(p);
    for (const auto& term : entry.at("terms")) {
      Rational c(Integer(term.at("coefficient_numerator").get<std::string>()),
                 Integer(term.at("coefficient_denominator").get<std::string>()));
      c.canonicalize();
      poly.add_term({exponents_from_json(term.at("v_exponents")), exponents_from_json(term.at("t_exponents")), {}}, c);
    }
    require_integral(poly, "cache entry v^" + gamma.to_string());
    if (!poly.is_homogeneous() || poly.weight() != weight(gamma, p))
      throw std::invalid_argument("cache: entry v^" + gamma.to_string() + " has the wrong weight");
    table.entries_.emplace(std::move(gamma), std::move(poly));
  }
  for (std::uint64_t r = 0; r <= table.max_weight_; ++r)
    for (const auto& gamma : enumerate_weight(r, p))
      if (!table.entries_.contains(gamma)) throw std::invalid_argument("cache: missing entry v^" + gamma.to_string());
  return table;
}

std::string EtaRTable::serialize() const { return to_json().dump(1) + "\n"; }

void EtaRTable::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write cache file " + path.string());
  out << serialize();
}

EtaRTable EtaRTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read cache file " + path.string());
  return from_json(nlohmann::json::parse(in));
}

const GradedPoly& eta_r_v(const ExponentSeq& gamma, const EtaRTable& table) { return table.eta(gamma); }

GradedPoly coefficient_of_t(const ExponentSeq& gamma, const ExponentSeq& beta, const EtaRTable& table) {
  return table.eta(gamma).coefficient_of_t(beta);
}

Rational mu(const ExponentSeq& gamma, const ExponentSeq& beta, const EtaRTable& table) {
  return table.eta(gamma).coefficient({{}, beta, {}});
}

std::string default_cache_name(Prime p, std::uint64_t max_weight) {
  std::ostringstream os;
  os << "eta_r_p" << p.value() << '_' << EtaRTable::kConvention << "_w" << max_weight << ".json";
  return os.str();
}

}  // namespace bpops
