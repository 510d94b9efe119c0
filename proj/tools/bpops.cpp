// bpops: build the η_R table, run verification suites, compute lattices.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed or an internal
// inconsistency was detected, 2 usage or configuration error.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bpops/bp_hopf.hpp"
#include "bpops/report.hpp"

namespace {

using namespace bpops;

struct Options {
  std::uint32_t p = 3;
  std::uint64_t max_weight = 13;
  std::string heights = "1,2";
  std::optional<std::uint64_t> window;
  std::optional<std::uint32_t> q;
  std::string cache;
  std::string format = "json";
  std::string caps;
  unsigned margin = 4;
  bool serial = false;
};

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("not a non-negative integer: '" + item + "'");
    }
  }
  return out;
}

RunConfig make_config(const Options& o) {
  RunConfig c;
  c.p = o.p;
  c.max_weight = o.max_weight;
  c.heights = parse_list(o.heights);
  c.window = o.window.value_or(std::min<std::uint64_t>(5, o.max_weight));
  c.q = o.q;
  if (!o.cache.empty()) c.cache = o.cache;
  c.format = parse_format(o.format);
  if (!o.caps.empty()) {
    const auto caps = parse_list(o.caps);
    if (caps.empty() || caps.size() > 2) throw ConfigError("--caps expects M or M,S");
    c.q_exponent_cap = static_cast<unsigned>(caps[0]);
    if (caps.size() == 2) c.p_exponent_cap = static_cast<unsigned>(caps[1]);
  }
  c.margin = o.margin;
  c.exec = o.serial ? Execution::serial : Execution::parallel;
  c.validate();
  return c;
}

nlohmann::json config_with_cache(const RunConfig& config, const CachedTable& cached) {
  nlohmann::json j = config.to_json();
  j["cache_fingerprint"] = cached.fingerprint;
  return j;
}

int cmd_eta_table(const RunConfig& config) {
  const CachedTable cached = obtain_table(config);
  const EtaRTable& table = cached.table;
  const Prime p = table.prime();

  struct Row {
    std::uint64_t weight;
    std::size_t entries = 0, terms = 0;
    long max_valuation = 0;
  };
  std::vector<Row> rows;
  for (std::uint64_t r = 0; r <= table.max_weight(); ++r) rows.push_back({r});
  for (const auto& [gamma, poly] : table.entries()) {
    Row& row = rows[weight(gamma, p)];
    ++row.entries;
    row.terms += poly.size();
    for (const auto& [key, c] : poly.terms()) row.max_valuation = std::max(row.max_valuation, valuation(c, p));
  }
  const std::string v1 = table.max_weight() >= 1 ? table.eta({1}).to_string() : std::string("n/a");
  const std::string status = cached.hit ? "cache hit" : "cache written";

  switch (config.format) {
    case OutputFormat::json: {
      nlohmann::json j;
      j["config"] = config_with_cache(config, cached);
      j["cache"] = {{"path", cached.path.string()}, {"status", status}};
      j["eta_R(v_1)"] = v1;
      j["weights"] = nlohmann::json::array();
      for (const auto& r : rows)
        j["weights"].push_back(
            {{"weight", r.weight}, {"entries", r.entries}, {"terms", r.terms}, {"max_valuation", r.max_valuation}});
      std::cout << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::csv:
      std::cout << "weight,entries,terms,max_valuation\n";
      for (const auto& r : rows) std::cout << r.weight << ',' << r.entries << ',' << r.terms << ',' << r.max_valuation << '\n';
      break;
    case OutputFormat::markdown:
      std::cout << "# η_R table, p = " << p.value() << ", weights ≤ " << table.max_weight() << "\n\n"
                << status << ": `" << cached.path.string() << "` (fingerprint " << cached.fingerprint << ")\n\n"
                << "η_R(v_1) = " << v1 << "\n\n| weight | entries | terms | max valuation |\n|---|---|---|---|\n";
      for (const auto& r : rows)
        std::cout << "| " << r.weight << " | " << r.entries << " | " << r.terms << " | " << r.max_valuation << " |\n";
      break;
  }
  std::cerr << status << ": " << cached.path.string() << '\n';
  return 0;
}

int cmd_verify(const RunConfig& config, const std::string& suite) {
  const CachedTable cached = obtain_table(config);
  Report report{config_with_cache(config, cached), run_suites(suite, cached.table, config), std::nullopt};
  std::cout << report.render(config.format);
  return report.passed() ? 0 : 1;
}

int cmd_lattices(const RunConfig& config) {
  const CachedTable cached = obtain_table(config);
  Report report{config_with_cache(config, cached), {}, compute_lattices(cached.table, config)};
  std::cout << report.render(config.format);
  if (report.lattices->failure) std::cerr << "error: " << *report.lattices->failure << '\n';
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification workbench for BP operations, BP<n> centres and S_g congruence lattices"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--p", o.p, "odd prime")->capture_default_str();
  app.add_option("--max-weight", o.max_weight, "weight bound for the eta_R table")->capture_default_str();
  app.add_option("--heights", o.heights, "comma-separated heights n")->capture_default_str();
  app.add_option("--N", o.window, "lattice window N (default min(5, max-weight))");
  app.add_option("--q", o.q, "topological generator (default: least primitive root mod p^2)");
  app.add_option("--cache", o.cache, "cache file (default $BPOPS_CACHE_DIR or ./.bpops_cache)");
  app.add_option("--format", o.format, "json | csv | markdown")
      ->check(CLI::IsMember({"json", "csv", "markdown", "md"}))
      ->capture_default_str();
  app.add_option("--caps", o.caps, "S_g generator caps M[,S] (default N+8,3)");
  app.add_option("--margin", o.margin, "stabilization margin")->capture_default_str();
  app.add_flag("--serial", o.serial, "use the serial reference kernels");

  auto* eta = app.add_subcommand("eta-table", "build or load the eta_R table and summarize it");
  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "etaR | triangular | realize | centre | congruence | all")
      ->required()
      ->check(CLI::IsMember({"etaR", "triangular", "realize", "centre", "congruence", "all"}));
  auto* lattices = app.add_subcommand("lattices", "compare the S_g window with the diagonal window lattice");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const RunConfig config = make_config(o);
    if (*eta) return cmd_eta_table(config);
    if (*verify) return cmd_verify(config, suite);
    if (*lattices) return cmd_lattices(config);
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const InternalConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
