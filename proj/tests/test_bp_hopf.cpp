#include <filesystem>
#include <random>

#include "doctest.h"

#include "bpops/bp_hopf.hpp"

using namespace bpops;

namespace {

const EtaRTable& table3() {
  static const EtaRTable t = EtaRTable::build(Prime(3), 13);
  return t;
}

GradedPoly v(ExponentSeq e, Rational c, Prime p) { return GradedPoly::v_monomial(std::move(e), c, p); }
GradedPoly t(ExponentSeq e, Rational c, Prime p) { return GradedPoly::t_monomial(std::move(e), c, p); }

// η_R(v_2) from p·η(m_2) − η(m_1)·η(v_1)^p, expanded directly with
// m_1 = v_1/p, m_2 = v_2/p + v_1^{p+1}/p², η(m_1) = m_1 + t_1, η(m_2) = m_2 + m_1 t_1^p + t_2.
GradedPoly eta_v2_oracle(Prime p) {
  const unsigned pv = p.value();
  const Rational P(pv);
  GradedPoly eta_v1 = v({1}, 1, p) + t({1}, P, p);
  GradedPoly eta_m1 = v({1}, 1 / P, p) + t({1}, 1, p);
  GradedPoly acc = v({0, 1}, 1, p) + v({pv + 1}, 1 / P, p) +
                   GradedPoly::monomial({ExponentSeq{1}, ExponentSeq{pv}, {}}, 1, p) + t({0, 1}, P, p);
  GradedPoly pw = GradedPoly::constant(1, p);
  for (unsigned i = 0; i < pv; ++i) pw = pw * eta_v1;
  return acc - eta_m1 * pw;
}

}  // namespace

TEST_CASE("only odd primes are accepted") {
  CHECK_THROWS_AS(require_odd_prime(2), std::invalid_argument);
  CHECK_THROWS_AS(require_odd_prime(9), std::invalid_argument);
  CHECK(require_odd_prime(7).value() == 7);
  CHECK_THROWS_AS(EtaRTable::build(Prime(2), 3), std::invalid_argument);
}

TEST_CASE("hazewinkel m examples") {
  for (unsigned pv : {3u, 5u}) {
    const Prime p(pv);
    const Rational P(pv);
    CHECK(hazewinkel_m(0, p) == GradedPoly::constant(1, p));
    CHECK(hazewinkel_m(1, p) == v({1}, 1 / P, p));
    CHECK(hazewinkel_m(2, p) == v({0, 1}, 1 / P, p) + v({pv + 1}, 1 / (P * P), p));
  }
  const Prime p(3);
  for (unsigned k = 0; k <= 4; ++k) {
    const auto m = hazewinkel_m(k, p);
    CHECK(m.is_homogeneous());
    CHECK(m.weight() == (k == 0 ? 0 : generator_weight(k, p)));
  }
}

TEST_CASE("symbolic eta_R(m_k)") {
  const Prime p(3);
  GradedPoly expected1 = GradedPoly::monomial({{}, {}, ExponentSeq{1}}, 1, p) + t({1}, 1, p);
  CHECK(eta_r_m_symbolic(1, p) == expected1);
  GradedPoly expected2 = GradedPoly::monomial({{}, {}, ExponentSeq{0, 1}}, 1, p) +
                         GradedPoly::monomial({{}, ExponentSeq{3}, ExponentSeq{1}}, 1, p) + t({0, 1}, 1, p);
  CHECK(eta_r_m_symbolic(2, p) == expected2);
}

TEST_CASE("eta_R examples") {
  const auto& tab = table3();
  const Prime p(3);
  CHECK(tab.eta({}) == GradedPoly::constant(1, p));
  CHECK(tab.eta({1}) == v({1}, 1, p) + t({1}, 3, p));
  CHECK(tab.eta({1}).to_string() == "v_1 + 3·t_1");
  CHECK(tab.eta({2}).coefficient({{}, ExponentSeq{2}, {}}) == 9);
  CHECK(eta_r_v({1}, tab) == tab.eta({1}));
  CHECK_THROWS_AS(tab.eta({0, 0, 0, 1}), std::out_of_range);
}

TEST_CASE("eta_R(v_2) agrees with a direct expansion") {
  for (unsigned pv : {3u, 5u, 7u}) {
    const Prime p(pv);
    const auto tab = EtaRTable::build(p, generator_weight(2, p));
    CHECK(tab.eta({0, 1}) == eta_v2_oracle(p));
  }
  // Frozen hand expansion at p = 3.
  const Prime p(3);
  GradedPoly hand = v({0, 1}, 1, p) + t({0, 1}, 3, p) + t({4}, -27, p);
  hand += GradedPoly::monomial({ExponentSeq{3}, ExponentSeq{1}, {}}, -4, p);
  hand += GradedPoly::monomial({ExponentSeq{2}, ExponentSeq{2}, {}}, -18, p);
  hand += GradedPoly::monomial({ExponentSeq{1}, ExponentSeq{3}, {}}, -35, p);
  CHECK(table3().eta({0, 1}) == hand);
}

TEST_CASE("coefficient_of_t examples") {
  const auto& tab = table3();
  const Prime p(3);
  CHECK(coefficient_of_t({1}, {1}, tab) == GradedPoly::constant(3, p));
  CHECK(mu({1}, {1}, tab) == 3);
  CHECK(mu({4}, {0, 1}, tab) == 0);
  CHECK(mu({0, 1}, {0, 1}, tab) == 3);
  CHECK(mu({4}, {4}, tab) == 81);
  CHECK(mu({0, 1}, {4}, tab) == -27);
  for (const auto& [gamma, poly] : tab.entries()) CHECK(coefficient_of_t(gamma, {}, tab) == v(gamma, 1, p));
  for (const auto& [gamma, poly] : tab.entries())
    for (const auto& [beta, unused] : tab.entries()) {
      if (weight(beta, p) > weight(gamma, p)) continue;
      const auto c = coefficient_of_t(gamma, beta, tab);
      if (!c.is_zero()) CHECK(c.weight() == weight(gamma, p) - weight(beta, p));
    }
}

TEST_CASE("check_integrality") {
  const Prime p(3);
  CHECK(check_integrality(GradedPoly::constant(1, p) + t({1}, 3, p)).integral);
  const auto bad = check_integrality(v({1}, Rational(1, 3), p));
  CHECK(!bad.integral);
  REQUIRE(bad.offenders.size() == 1);
  CHECK(bad.offenders.front().second == Rational(1, 3));
  CHECK(check_integrality(table3().eta({0, 1})).integral);
}

TEST_CASE("table laws: integrality, homogeneity, counit, top term") {
  for (const auto& tab : {table3(), EtaRTable::build(Prime(5), 13), EtaRTable::build(Prime(7), 16)}) {
    const Prime p = tab.prime();
    std::size_t count = 0;
    for (std::uint64_t r = 0; r <= tab.max_weight(); ++r) count += enumerate_weight(r, p).size();
    CHECK(tab.entries().size() == count);
    for (const auto& [gamma, poly] : tab.entries()) {
      CHECK(check_integrality(poly).integral);
      CHECK(poly.is_homogeneous());
      CHECK(poly.weight() == weight(gamma, p));
      CHECK(!poly.involves_m());
      CHECK(poly.set_t_zero() == v(gamma, 1, p));
      const auto pure = poly.pure_t_part();
      REQUIRE(!pure.empty());
      CHECK(pure.rbegin()->first == gamma);
      CHECK(pure.rbegin()->second == Rational(p.power(gamma.total_exponent())));
    }
  }
}

TEST_CASE("eta_R is a ring map on random pairs") {
  const auto& tab = table3();
  const Prime p(3);
  std::vector<ExponentSeq> keys;
  for (const auto& [g, unused] : tab.entries()) keys.push_back(g);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
  int checked = 0;
  while (checked < 300) {
    const auto& a = keys[pick(rng)];
    const auto& b = keys[pick(rng)];
    if (weight(a, p) + weight(b, p) > tab.max_weight()) continue;
    ++checked;
    CHECK(tab.eta(add(a, b)) == tab.eta(a) * tab.eta(b));
  }
}

TEST_CASE("serial and parallel builds agree") {
  for (unsigned pv : {3u, 5u}) {
    const Prime p(pv);
    CHECK(EtaRTable::build(p, 12, Execution::serial) == EtaRTable::build(p, 12, Execution::parallel));
  }
}

TEST_CASE("cache round trip is byte-identical") {
  const auto& tab = table3();
  const std::string bytes = tab.serialize();
  CHECK(EtaRTable::from_json(nlohmann::json::parse(bytes)) == tab);
  CHECK(EtaRTable::from_json(nlohmann::json::parse(bytes)).serialize() == bytes);

  const auto dir = std::filesystem::temp_directory_path() / "bpops_test_cache";
  std::filesystem::remove_all(dir);
  const auto path = dir / default_cache_name(tab.prime(), tab.max_weight());
  tab.save(path);
  const auto loaded = EtaRTable::load(path);
  CHECK(loaded == tab);
  CHECK(loaded.serialize() == bytes);
  std::filesystem::remove_all(dir);
  CHECK(default_cache_name(Prime(3), 13) == "eta_r_p3_hazewinkel_w13.json");
}

TEST_CASE("cache documents are validated") {
  const auto small = EtaRTable::build(Prime(3), 4);
  const nlohmann::json good = small.to_json();
  CHECK(good.at("entries").size() == 6);
  CHECK(good.at("entries").at(1).at("terms").at(0).at("coefficient_numerator").is_string());

  auto wrong_convention = good;
  wrong_convention["convention"] = "araki";
  CHECK_THROWS(EtaRTable::from_json(wrong_convention));

  auto even = good;
  even["prime"] = 2;
  CHECK_THROWS(EtaRTable::from_json(even));

  auto missing = good;
  missing["entries"].erase(missing["entries"].begin() + 2);
  CHECK_THROWS(EtaRTable::from_json(missing));

  auto fractional = good;
  fractional["entries"][1]["terms"][0]["coefficient_denominator"] = "3";
  CHECK_THROWS(EtaRTable::from_json(fractional));

  auto misweighted = good;
  misweighted["entries"][1]["terms"][0]["t_exponents"] = nlohmann::json::array({2});
  CHECK_THROWS(EtaRTable::from_json(misweighted));

  CHECK_THROWS(EtaRTable::from_json(nlohmann::json::object()));
}
