#include "bpops/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "bpops/monomial.hpp"
#include "bpops/op_calculus.hpp"
#include "bpops/truncation_centre.hpp"

namespace bpops {

namespace {

std::string join(const std::vector<long>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

std::string vector_string(const QVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

template <class F>
Check guarded(std::string id, F&& body) {
  Check c{std::move(id), false, {}};
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.witness = std::string("exception: ") + e.what();
  }
  return c;
}

Rational p_power(Prime p, unsigned long e) { return Rational(p.power(e)); }

// Per-weight work items run under the selected kernel; results come back in
// weight order regardless of scheduling.
template <class F>
std::vector<Check> per_weight(std::uint64_t max_weight, Execution exec, F&& make) {
  std::vector<Check> out(max_weight + 1);
  const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel)
  for (long r = 0; r < n; ++r) out[static_cast<std::size_t>(r)] = make(static_cast<std::uint64_t>(r));
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_cell(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  if (name == "markdown" || name == "md") return OutputFormat::markdown;
  throw ConfigError("unknown format: " + name);
}

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::markdown: return "markdown";
  }
  return "json";
}

void RunConfig::validate() const {
  if (p == 2) throw ConfigError("p must be an odd prime (got 2)");
  try {
    Prime check(p);
  } catch (const std::invalid_argument&) {
    throw ConfigError("p must be an odd prime (got " + std::to_string(p) + ")");
  }
  if (window > max_weight)
    throw ConfigError("window N=" + std::to_string(window) + " exceeds max weight " + std::to_string(max_weight));
  if (heights.empty()) throw ConfigError("at least one height is required");
  for (auto n : heights)
    if (n == 0) throw ConfigError("heights must be at least 1");
  if (margin == 0) throw ConfigError("margin must be at least 1");
  if (q && (*q == 0 || *q % p == 0)) throw ConfigError("q must be a positive integer prime to p");
}

SgCaps RunConfig::caps() const {
  SgCaps c;
  c.max_q_exponent = q_exponent_cap;
  c.max_p_exponent = p_exponent_cap;
  c.margin = margin;
  c.q = q;
  return c;
}

nlohmann::json RunConfig::to_json() const {
  const Prime pr = prime();
  return {{"p", p},
          {"max_weight", max_weight},
          {"heights", heights},
          {"N", window},
          {"q", q.value_or(default_topological_generator(pr))},
          {"caps", {{"q_exponent", q_exponent_cap.value_or(static_cast<unsigned>(window) + 8)},
                    {"p_exponent", p_exponent_cap}}},
          {"margin", margin},
          {"format", bpops::to_string(format)},
          {"convention", std::string(EtaRTable::kConvention)}};
}

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

// ------------------------------------------------------------------ suites

SuiteResult verify_eta_r(const EtaRTable& table) {
  const Prime p = table.prime();
  SuiteResult s{"etaR", {}};

  s.checks.push_back(guarded("etaR.integrality", [&](Check& c) {
    for (const auto& [gamma, poly] : table.entries()) {
      auto rep = check_integrality(poly);
      if (!rep.integral) {
        c.witness = "eta_R(v^" + gamma.to_string() + ") has coefficient " + rep.offenders.front().second.get_str() +
                    " on " + rep.offenders.front().first.to_string();
        return;
      }
    }
    c.pass = true;
    c.witness = std::to_string(table.entries().size()) + " entries through weight " + std::to_string(table.max_weight());
  }));

  s.checks.push_back(guarded("etaR.v1", [&](Check& c) {
    if (table.max_weight() == 0) {
      c.pass = true;
      c.witness = "vacuous: weight bound 0";
      return;
    }
    GradedPoly expected = GradedPoly::v_monomial({1}, 1, p) + GradedPoly::t_monomial({1}, Rational(p.as_integer()), p);
    const GradedPoly& got = table.eta({1});
    c.pass = got == expected;
    c.witness = "eta_R(v_1) = " + got.to_string();
  }));

  s.checks.push_back(guarded("etaR.top_term", [&](Check& c) {
    for (const auto& [gamma, poly] : table.entries()) {
      const auto pure = poly.pure_t_part();
      if (pure.empty() || pure.rbegin()->first != gamma ||
          pure.rbegin()->second != p_power(p, gamma.total_exponent())) {
        c.witness = "top pure-t term of eta_R(v^" + gamma.to_string() + ") is wrong";
        return;
      }
    }
    c.pass = true;
    c.witness = "top pure-t term of eta_R(v^g) is p^{sum g_i} t^g; all others lower";
  }));

  s.checks.push_back(guarded("etaR.counit", [&](Check& c) {
    for (const auto& [gamma, poly] : table.entries())
      if (poly.set_t_zero() != GradedPoly::v_monomial(gamma, 1, p)) {
        c.witness = "eta_R(v^" + gamma.to_string() + ")|_{t=0} != v^" + gamma.to_string();
        return;
      }
    c.pass = true;
    c.witness = "t -> 0 recovers v^g for every entry";
  }));

  s.checks.push_back(guarded("etaR.homogeneity", [&](Check& c) {
    for (const auto& [gamma, poly] : table.entries())
      if (!poly.is_homogeneous() || poly.weight() != weight(gamma, p)) {
        c.witness = "eta_R(v^" + gamma.to_string() + ") is not homogeneous of weight " +
                    std::to_string(weight(gamma, p));
        return;
      }
    c.pass = true;
    c.witness = "every entry homogeneous of its key's weight";
  }));

  s.checks.push_back(guarded("etaR.ring_map", [&](Check& c) {
    std::size_t pairs = 0;
    for (auto a = table.entries().begin(); a != table.entries().end(); ++a)
      for (auto b = a; b != table.entries().end(); ++b) {
        if (a->first.empty() || b->first.empty()) continue;
        if (weight(a->first, p) + weight(b->first, p) > table.max_weight()) continue;
        ++pairs;
        if (table.eta(add(a->first, b->first)) != a->second * b->second) {
          c.witness = "eta_R(v^a v^b) != eta_R(v^a) eta_R(v^b) for a=" + a->first.to_string() +
                      " b=" + b->first.to_string();
          return;
        }
      }
    c.pass = true;
    c.witness = std::to_string(pairs) + " products checked";
  }));
  return s;
}

SuiteResult verify_triangular(const EtaRTable& table, std::uint64_t max_weight, Execution exec) {
  const Prime p = table.prime();
  max_weight = std::min(max_weight, table.max_weight());
  SuiteResult s{"triangular", per_weight(max_weight, exec, [&](std::uint64_t r) {
                  return guarded("triangular.w" + std::to_string(r), [&](Check& c) {
                    const auto basis = enumerate_weight(r, p);
                    std::size_t zeros = 0;
                    for (const auto& beta : basis) {
                      if (mu(beta, beta, table) != p_power(p, beta.total_exponent())) {
                        c.witness = "mu_{b,b} != p^{sum b_i} at b=" + beta.to_string();
                        return;
                      }
                      for (const auto& gamma : basis) {
                        if (!(gamma < beta)) continue;
                        ++zeros;
                        if (mu(gamma, beta, table) != 0) {
                          c.witness = "mu_{g,b} != 0 with g=" + gamma.to_string() + " < b=" + beta.to_string();
                          return;
                        }
                      }
                    }
                    c.pass = true;
                    c.witness = std::to_string(basis.size()) + " diagonal, " + std::to_string(zeros) +
                                " vanishing mu_{g,b} (g<b)";
                  });
                })};
  return s;
}

SuiteResult verify_realize(const EtaRTable& table, std::uint64_t max_weight, Execution exec) {
  const Prime p = table.prime();
  max_weight = std::min(max_weight, table.max_weight());
  SuiteResult s{"realize", {}};
  for (std::uint64_t r = 0; r <= max_weight; ++r) {
    s.checks.push_back(guarded("realize.w" + std::to_string(r), [&](Check& c) {
      const auto all = realize_weight(r, table, exec);
      long max_val = 0;
      for (const auto& re : all) {
        if (re.mu_bar.is_zero()) {
          c.witness = "mu_bar vanishes for M_{" + re.alpha.to_string() + "," + re.beta.to_string() + "}";
          return;
        }
        QMatrix sum(re.matrix.size(), re.matrix.size());
        for (const auto& [gamma, coeff] : re.coefficients) {
          if (!is_p_integral(coeff, p)) {
            c.witness = "non-integral coefficient " + coeff.get_str();
            return;
          }
          sum += action_matrix(phi_alpha_beta(re.alpha, gamma, p), r, table).entries * coeff;
        }
        if (sum != QMatrix::elementary(sum.rows(), re.matrix.index_of(re.alpha), re.matrix.index_of(re.beta)) *
                       re.mu_bar.value()) {
          c.witness = "combination for E_{" + re.alpha.to_string() + "," + re.beta.to_string() + "} is wrong";
          return;
        }
        max_val = std::max(max_val, re.mu_bar.valuation());
      }
      c.pass = true;
      c.witness = std::to_string(all.size()) + " pairs realized; max v_p(mu_bar) = " + std::to_string(max_val);
    }));
  }
  return s;
}

SuiteResult verify_centre(const EtaRTable& table, std::uint64_t max_weight, const std::vector<std::size_t>& heights,
                          Execution exec) {
  const Prime p = table.prime();
  max_weight = std::min(max_weight, table.max_weight());
  SuiteResult s{"centre", {}};
  for (std::size_t n : heights)
    for (std::uint64_t r = 0; r <= max_weight; ++r) {
      const std::string tag = ".n" + std::to_string(n) + ".w" + std::to_string(r);
      s.checks.push_back(guarded("centre.block_order" + tag, [&](Check& c) {
        auto split = block_split(r, n, p);
        c.pass = true;
        c.witness = "R=" + std::to_string(split.r_indices.size()) + " J=" + std::to_string(split.j_indices.size());
      }));
      s.checks.push_back(guarded("centre.commutant" + tag, [&](Check& c) {
        auto com = centre_commutant(r, n, table, exec);
        c.pass = com.rank() == 1 && com.basis.front() == QMatrix::identity(com.size);
        c.witness = "R-block size " + std::to_string(com.size) + ", commutant rank " + std::to_string(com.rank()) +
                    (c.pass ? " (scalars)" : "");
      }));
    }
  return s;
}

SuiteResult verify_congruence(const EtaRTable& table, const RunConfig& config) {
  const Prime p = table.prime();
  const std::uint64_t window = config.window;
  const SgCaps caps = config.caps();
  const std::uint32_t q = caps.q.value_or(default_topological_generator(p));
  SuiteResult s{"congruence", {}};

  std::vector<std::optional<SgWindow>> sg(window + 1);
  for (std::uint64_t k = 0; k <= window; ++k) {
    s.checks.push_back(guarded("congruence.stabilization.N" + std::to_string(k), [&](Check& c) {
      try {
        sg[k] = sg_window(k, p, caps, config.exec);
      } catch (const StabilizationError& e) {
        c.witness = e.what();
        return;
      }
      const auto& cert = sg[k]->certificate;
      c.pass = true;
      c.witness = "stable after round " + std::to_string(cert.last_change_round) + " (" +
                  std::to_string(cert.rounds) + " rounds, " + std::to_string(cert.generators) +
                  " generators); S_g pivots " + join(sg[k]->lattice.pivot_exponents());
    }));
  }

  s.checks.push_back(guarded("congruence.generators", [&](Check& c) {
    if (!sg[window]) {
      c.witness = "no S_g window";
      return;
    }
    const Integer pq = p.as_integer() * q;
    const std::vector<Integer> ks{0, 1, q, Integer(q) * q, p.as_integer(), pq};
    std::string seen;
    for (const auto& k : ks) {
      auto w = adams_sequence(PAdicScalar(Rational(k), p), window);
      if (!sg_membership(w, *sg[window])) {
        c.witness = "Psi^" + k.get_str() + " window not certified";
        return;
      }
      seen += (seen.empty() ? "" : ",") + k.get_str();
    }
    c.pass = true;
    c.witness = "certificates for k in {" + seen + "}";
  }));

  s.checks.push_back(guarded("congruence.nested", [&](Check& c) {
    for (std::uint64_t k = 0; k < window; ++k) {
      if (!sg[k] || !sg[k + 1]) {
        c.witness = "missing S_g window";
        return;
      }
      if (!sg[k]->lattice.contains(sg[k + 1]->lattice.project_prefix(k + 1))) {
        c.witness = "S_g(N=" + std::to_string(k + 1) + ") does not project into S_g(N=" + std::to_string(k) + ")";
        return;
      }
    }
    c.pass = true;
    c.witness = "projections nested for N <= " + std::to_string(window);
  }));

  for (std::size_t n : config.heights) {
    std::optional<LatticeComparison> cmp;
    s.checks.push_back(guarded("congruence.inclusion.n" + std::to_string(n), [&](Check& c) {
      cmp = compare_with_diagonal_window(window, n, table, caps, config.exec);
      c.pass = cmp->sg_in_diagonal;
      c.witness = "S_g window in diagonal window lattice: " + std::string(c.pass ? "yes" : "no");
      if (cmp->witness) c.witness += "; S_g vector outside: " + vector_string(*cmp->witness);
    }));
    s.checks.push_back(guarded("congruence.diagonal_in_sg.n" + std::to_string(n), [&](Check& c) {
      if (!cmp) {
        c.witness = "comparison unavailable";
        return;
      }
      c.pass = cmp->diagonal_in_sg;
      c.witness = "diagonal pivots " + join(cmp->diagonal_pivots) + "; S_g pivots " + join(cmp->sg_pivots);
      if (cmp->gap) c.witness += "; gap " + std::to_string(*cmp->gap);
    }));
    s.checks.push_back(guarded("congruence.iota_centrality.n" + std::to_string(n), [&](Check& c) {
      auto scalar = [p](long v) { return PAdicScalar(v, p); };
      const std::vector<AdamsCombination> combos{
          {{scalar(1), scalar(1)}},
          {{scalar(q), scalar(1)}},
          {{scalar(0), scalar(1)}},
          {{scalar(1), scalar(1)}, {scalar(0), scalar(-1)}},
          {{scalar(static_cast<long>(p.value())), scalar(1)}},
          {{scalar(q), scalar(1)}, {scalar(1), scalar(-1)}},
      };
      const std::uint64_t top = table.max_weight();
      std::size_t products = 0;
      for (std::uint64_t r = 0; r <= top; ++r) {
        const auto split = block_split(r, n, p);
        std::vector<QMatrix> ops;
        for (std::size_t a : split.r_indices)
          for (std::size_t b : split.r_indices)
            ops.push_back(projected_elementary(split.basis[a], split.basis[b], n, table));
        for (const auto& combo : combos) {
          const QMatrix d = iota_hat_n_window(combo, r, n, p)[r];
          for (const auto& op : ops) {
            ++products;
            if (d * op != op * d) {
              c.witness = "non-commuting pair at weight " + std::to_string(r);
              return;
            }
          }
        }
      }
      c.pass = true;
      c.witness = std::to_string(products) + " commutators vanish through weight " + std::to_string(top);
    }));
  }
  return s;
}

std::vector<SuiteResult> run_suites(const std::string& suite, const EtaRTable& table, const RunConfig& config) {
  std::vector<SuiteResult> out;
  const bool all = suite == "all";
  if (!all && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw ConfigError("unknown suite: " + suite);
  if (all || suite == "etaR") out.push_back(verify_eta_r(table));
  if (all || suite == "triangular") out.push_back(verify_triangular(table, config.max_weight, config.exec));
  if (all || suite == "realize") out.push_back(verify_realize(table, config.max_weight, config.exec));
  if (all || suite == "centre") out.push_back(verify_centre(table, config.max_weight, config.heights, config.exec));
  if (all || suite == "congruence") out.push_back(verify_congruence(table, config));
  return out;
}

// ---------------------------------------------------------------- lattices

bool LatticeReport::all_included() const {
  return !failure && std::all_of(comparisons.begin(), comparisons.end(),
                                 [](const LatticeComparison& c) { return c.sg_in_diagonal; });
}

LatticeReport compute_lattices(const EtaRTable& table, const RunConfig& config) {
  LatticeReport out;
  out.window = config.window;
  try {
    for (std::size_t n : config.heights)
      out.comparisons.push_back(compare_with_diagonal_window(config.window, n, table, config.caps(), config.exec));
  } catch (const StabilizationError& e) {
    out.failure = e.what();
  }
  return out;
}

// ----------------------------------------------------------------- reports

bool Report::passed() const {
  const bool suites_ok = std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
  return suites_ok && (!lattices || lattices->all_included());
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["config"] = config;
  j["suites"] = nlohmann::json::array();
  for (const auto& s : suites) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : s.checks)
      checks.push_back({{"id", c.id}, {"status", c.pass ? "PASS" : "FAIL"}, {"witness", c.witness}});
    j["suites"].push_back({{"name", s.name}, {"checks", std::move(checks)}});
  }
  if (!lattices) {
    j["lattices"] = nullptr;
  } else {
    nlohmann::json l;
    l["N"] = lattices->window;
    if (lattices->failure) l["failure"] = *lattices->failure;
    nlohmann::json diag = nlohmann::json::object(), inc = nlohmann::json::object(), rev = nlohmann::json::object(),
                   gap = nlohmann::json::object(), pivots = nlohmann::json::object();
    for (const auto& c : lattices->comparisons) {
      const std::string key = std::to_string(c.height);
      diag[key] = c.diagonal_divisors;
      pivots[key] = c.diagonal_pivots;
      inc[key] = c.sg_in_diagonal;
      rev[key] = c.diagonal_in_sg;
      gap[key] = c.gap ? nlohmann::json(*c.gap) : nlohmann::json(nullptr);
    }
    if (!lattices->comparisons.empty()) {
      const auto& first = lattices->comparisons.front();
      l["sg"] = first.sg_divisors;
      l["sg_pivots"] = first.sg_pivots;
      l["stabilization"] = {{"q", first.certificate.q},
                            {"rounds", first.certificate.rounds},
                            {"last_change_round", first.certificate.last_change_round},
                            {"generators", first.certificate.generators}};
    }
    l["diagonal"] = diag;
    l["diagonal_pivots"] = pivots;
    l["inclusion"] = inc;
    l["reverse_inclusion"] = rev;
    l["gap"] = gap;
    j["lattices"] = std::move(l);
  }
  return j;
}

std::string Report::render(OutputFormat format) const {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::json:
      os << to_json().dump(2) << '\n';
      break;
    case OutputFormat::csv: {
      os << "section,name,id,status,witness\n";
      os << "config,,,," << csv_field(config.dump()) << '\n';
      for (const auto& s : suites)
        for (const auto& c : s.checks)
          os << "suite," << s.name << ',' << csv_field(c.id) << ',' << (c.pass ? "PASS" : "FAIL") << ','
             << csv_field(c.witness) << '\n';
      if (lattices) {
        if (lattices->failure) os << "lattice,,failure,FAIL," << csv_field(*lattices->failure) << '\n';
        for (const auto& c : lattices->comparisons) {
          const std::string h = "n" + std::to_string(c.height);
          os << "lattice,S_g,divisors,," << csv_field(join(c.sg_divisors)) << '\n';
          os << "lattice,diagonal." << h << ",divisors,," << csv_field(join(c.diagonal_divisors)) << '\n';
          os << "lattice,inclusion." << h << ",S_g in diagonal," << (c.sg_in_diagonal ? "PASS" : "FAIL") << ",\n";
          os << "lattice,reverse_inclusion." << h << ",diagonal in S_g," << (c.diagonal_in_sg ? "yes" : "no")
             << ",\n";
          os << "lattice,gap." << h << ",colength,," << (c.gap ? std::to_string(*c.gap) : "n/a") << '\n';
        }
      }
      break;
    }
    case OutputFormat::markdown: {
      os << "# BP operation verification report\n\n";
      os << "```json\n" << config.dump(2) << "\n```\n";
      for (const auto& s : suites) {
        os << "\n## Suite `" << s.name << "`: " << (s.passed() ? "PASS" : "FAIL") << "\n\n";
        os << "| check | status | witness |\n|---|---|---|\n";
        for (const auto& c : s.checks)
          os << "| " << md_cell(c.id) << " | " << (c.pass ? "PASS" : "FAIL") << " | " << md_cell(c.witness)
             << " |\n";
      }
      if (lattices) {
        os << "\n## Lattices: S_g window vs diagonal window (N = " << lattices->window << ")\n\n";
        if (lattices->failure) os << "**failure:** " << lattices->failure.value() << "\n\n";
        if (!lattices->comparisons.empty())
          os << "S_g elementary divisors (p-exponents): " << join(lattices->comparisons.front().sg_divisors)
             << "\n\n";
        os << "| n | diagonal divisors | S_g ⊆ diagonal | diagonal ⊆ S_g | gap |\n|---|---|---|---|---|\n";
        for (const auto& c : lattices->comparisons)
          os << "| " << c.height << " | " << join(c.diagonal_divisors) << " | "
             << (c.sg_in_diagonal ? "PASS" : "FAIL") << " | " << (c.diagonal_in_sg ? "yes" : "no") << " | "
             << (c.gap ? std::to_string(*c.gap) : "n/a") << " |\n";
      }
      break;
    }
  }
  return os.str();
}

std::string fingerprint(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::filesystem::path resolve_cache_path(const RunConfig& config) {
  if (config.cache) return *config.cache;
  std::filesystem::path dir = ".bpops_cache";
  if (const char* env = std::getenv("BPOPS_CACHE_DIR"); env && *env) dir = env;
  return dir / default_cache_name(config.prime(), config.max_weight);
}

CachedTable obtain_table(const RunConfig& config) {
  const auto path = resolve_cache_path(config);
  const Prime p = config.prime();
  if (std::filesystem::exists(path)) {
    try {
      EtaRTable table = EtaRTable::load(path);
      if (table.prime() == p && table.max_weight() == config.max_weight) {
        std::string bytes = table.serialize();
        return {std::move(table), path, true, fingerprint(bytes)};
      }
      std::cerr << "cache " << path << " does not match the configuration; rebuilding\n";
    } catch (const std::exception& e) {
      std::cerr << "cache " << path << " unreadable (" << e.what() << "); rebuilding\n";
    }
  }
  EtaRTable table = EtaRTable::build(p, config.max_weight, config.exec);
  table.save(path);
  std::string bytes = table.serialize();
  return {std::move(table), path, false, fingerprint(bytes)};
}

}  // namespace bpops
