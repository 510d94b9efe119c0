#pragma once

// Verification suites and report rendering behind the command-line front end.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bpops/bp_hopf.hpp"
#include "bpops/execution.hpp"
#include "bpops/ktheory_lattice.hpp"

namespace bpops {

enum class OutputFormat { json, csv, markdown };

OutputFormat parse_format(const std::string& name);
std::string to_string(OutputFormat f);

/// Configuration error; the CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::uint32_t p = 3;
  std::uint64_t max_weight = 13;
  std::vector<std::size_t> heights{1, 2};
  std::uint64_t window = 5;
  std::optional<std::uint32_t> q;
  std::optional<std::filesystem::path> cache;
  OutputFormat format = OutputFormat::json;
  std::optional<unsigned> q_exponent_cap;
  unsigned p_exponent_cap = 3;
  unsigned margin = 4;
  Execution exec = Execution::parallel;

  /// Throws ConfigError on an invalid combination.
  void validate() const;
  Prime prime() const { return require_odd_prime(p); }
  SgCaps caps() const;
  nlohmann::json to_json() const;
};

struct Check {
  std::string id;
  bool pass = false;
  std::string witness;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  bool passed() const;
};

SuiteResult verify_eta_r(const EtaRTable& table);
SuiteResult verify_triangular(const EtaRTable& table, std::uint64_t max_weight, Execution exec);
SuiteResult verify_realize(const EtaRTable& table, std::uint64_t max_weight, Execution exec);
SuiteResult verify_centre(const EtaRTable& table, std::uint64_t max_weight, const std::vector<std::size_t>& heights,
                          Execution exec);
SuiteResult verify_congruence(const EtaRTable& table, const RunConfig& config);

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"etaR", "triangular", "realize", "centre", "congruence"};
  return names;
}

/// Runs one suite by name, or every suite for "all".
std::vector<SuiteResult> run_suites(const std::string& suite, const EtaRTable& table, const RunConfig& config);

struct LatticeReport {
  std::uint64_t window = 0;
  std::vector<LatticeComparison> comparisons;
  std::optional<std::string> failure;
  bool all_included() const;
};

LatticeReport compute_lattices(const EtaRTable& table, const RunConfig& config);

struct Report {
  nlohmann::json config;
  std::vector<SuiteResult> suites;
  std::optional<LatticeReport> lattices;

  bool passed() const;
  nlohmann::json to_json() const;
  std::string render(OutputFormat format) const;
};

/// FNV-1a 64 of the bytes, hex.
std::string fingerprint(const std::string& bytes);

/// Cache path: --cache if given, else $BPOPS_CACHE_DIR (or ./.bpops_cache)
/// joined with the default name for (p, max_weight).
std::filesystem::path resolve_cache_path(const RunConfig& config);

struct CachedTable {
  EtaRTable table;
  std::filesystem::path path;
  bool hit = false;
  std::string fingerprint;
};

/// Loads the cache if it matches the config, otherwise builds and writes it.
CachedTable obtain_table(const RunConfig& config);

}  // namespace bpops
