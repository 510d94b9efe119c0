#include "doctest.h"

#include "bpops/truncation_centre.hpp"

using namespace bpops;

namespace {

const EtaRTable& table3() {
  static const EtaRTable t = EtaRTable::build(Prime(3), 13);
  return t;
}

QVector vec(std::initializer_list<long> xs) {
  QVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("block split examples") {
  const Prime p(3);
  {
    const auto s = block_split(4, 1, p);
    CHECK(s.r_indices == std::vector<std::size_t>{0});
    CHECK(s.j_indices == std::vector<std::size_t>{1});
    CHECK(s.basis[1] == ExponentSeq{0, 1});
  }
  {
    const auto s = block_split(4, 2, p);
    CHECK(s.r_indices.size() == 2);
    CHECK(s.j_indices.empty());
  }
  {
    const auto s = block_split(13, 2, p);
    REQUIRE(s.j_indices.size() == 1);
    CHECK(s.basis[s.j_indices.front()] == ExponentSeq{0, 0, 1});
  }
  CHECK_THROWS_AS(block_split(4, 0, p), std::invalid_argument);
}

TEST_CASE("block order certificate for r <= 12, n <= 3, p = 3 and 5") {
  for (unsigned pv : {3u, 5u})
    for (std::uint64_t r = 0; r <= 12; ++r)
      for (std::size_t n = 1; n <= 3; ++n) {
        const auto s = block_split(r, n, Prime(pv));
        CHECK(s.r_indices.size() + s.j_indices.size() == s.basis.size());
        if (!s.r_indices.empty() && !s.j_indices.empty()) CHECK(s.r_indices.back() < s.j_indices.front());
      }
}

TEST_CASE("projected elementary examples") {
  const auto& tab = table3();
  const auto m = projected_elementary({4}, {4}, 1, tab);
  REQUIRE(m.rows() == 1);
  CHECK(m(0, 0) == 81);
  CHECK_THROWS_AS(projected_elementary({0, 1}, {4}, 1, tab), std::invalid_argument);

  // Weight 8, height 2: the full 3×3 family, each a multiple of one elementary matrix.
  const auto basis = enumerate_weight(8, Prime(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const auto pm = projected_elementary(basis[i], basis[j], 2, tab);
      const auto full = elementary_realize(basis[i], basis[j], tab);
      CHECK(pm == QMatrix::elementary(3, i, j) * full.mu_bar.value());
      CHECK(pm == full.matrix.entries);
    }
}

TEST_CASE("centre commutant is scalar") {
  const auto& tab = table3();
  CHECK(centre_commutant(0, 1, tab).rank() == 1);
  CHECK(centre_commutant(4, 1, tab).rank() == 1);
  CHECK(centre_commutant(8, 2, tab).rank() == 1);
  for (std::size_t n : {1u, 2u})
    for (std::uint64_t r = 0; r <= 12; ++r) {
      const auto c = centre_commutant(r, n, tab);
      REQUIRE(c.rank() == 1);
      CHECK(c.basis.front() == QMatrix::identity(c.size));
    }
}

TEST_CASE("diagonal window lattice examples") {
  const auto& tab = table3();
  for (std::size_t n : {1u, 2u, 3u}) {
    const auto L0 = diagonal_window_lattice(0, n, tab);
    CHECK(L0.is_full());
    CHECK(L0.ambient_rank() == 1);
  }
  // N = 1: only the counit and φ_{(1),(1)} (acting as 0 then 3), so μ_1 ≡ μ_0 mod 3.
  const auto L1 = diagonal_window_lattice(1, 1, tab);
  CHECK(L1.pivot_exponents() == std::vector<long>{0, 1});
  CHECK(lattice_membership(vec({1, 1}), L1));
  CHECK(lattice_membership(vec({1, 4}), L1));
  CHECK(!lattice_membership(vec({1, 0}), L1));
  CHECK_THROWS_AS(diagonal_window_lattice(14, 1, tab), std::out_of_range);
}

TEST_CASE("diagonal window lattice refines monotonically") {
  const auto& tab = table3();
  for (std::size_t n : {1u, 2u}) {
    DvrLattice prev = diagonal_window_lattice(0, n, tab);
    for (std::uint64_t N = 1; N <= 7; ++N) {
      const auto cur = diagonal_window_lattice(N, n, tab);
      QVector ones(N + 1, Rational(1));
      CHECK(lattice_membership(ones, cur));
      CHECK(prev.contains(cur.project_prefix(N)));
      prev = cur;
    }
  }
}

TEST_CASE("serial and parallel diagonal lattices agree") {
  const auto& tab = table3();
  for (std::size_t n : {1u, 2u})
    CHECK(diagonal_window_lattice(6, n, tab, Execution::serial) == diagonal_window_lattice(6, n, tab, Execution::parallel));
}

TEST_CASE("iota_hat windows") {
  const Prime p(3);
  const PAdicScalar one(1, p), zero(0, p), two(2, p);
  {
    const auto w = iota_hat_n_window({{one, one}}, 6, 1, p);
    for (std::uint64_t r = 0; r <= 6; ++r) CHECK(w[r] == QMatrix::identity(block_split(r, 1, p).r_indices.size()));
  }
  CHECK(adams_combination_window({{two, one}}, 3, p) == vec({1, 4, 16, 64}));
  CHECK(adams_combination_window({{one, one}, {zero, -one}}, 3, p) == vec({0, 1, 1, 1}));
  {
    const auto w = iota_hat_n_window({{two, one}}, 4, 2, p);
    CHECK(w[2] == QMatrix::scalar(1, 16));
    CHECK(w[4] == QMatrix::scalar(2, 256));
  }
  CHECK_THROWS(adams_combination_window({{PAdicScalar(2, Prime(5)), one}}, 2, p));
}

TEST_CASE("iota_hat images of unit Adams combinations lie in the diagonal lattice") {
  const auto& tab = table3();
  const Prime p(3);
  const PAdicScalar one(1, p);
  const std::vector<AdamsCombination> combos{
      {{PAdicScalar(2, p), one}},
      {{PAdicScalar(4, p), one}},
      {{PAdicScalar(2, p), one}, {one, -one}},
      {{PAdicScalar(Rational(1, 2), p), PAdicScalar(5, p)}, {PAdicScalar(7, p), PAdicScalar(-2, p)}},
  };
  for (std::size_t n : {1u, 2u})
    for (std::uint64_t N = 0; N <= 6; ++N) {
      const auto L = diagonal_window_lattice(N, n, tab);
      for (const auto& c : combos) {
        const auto mats = iota_hat_n_window(c, N, n, p);
        const auto win = adams_combination_window(c, N, p);
        for (std::uint64_t r = 0; r <= N; ++r) CHECK(mats[r] == QMatrix::scalar(mats[r].rows(), win[r]));
        CHECK(lattice_membership(win, L));
      }
    }
}

TEST_CASE("Psi^0 and Psi^p windows are outside the diagonal lattice") {
  // Neither is a combination of stable operations: at N = 1 that needs
  // μ_1 ≡ μ_0 mod 3, but the windows are (1, 0) and (1, 9).
  const auto& tab = table3();
  const Prime p(3);
  for (long k : {0L, 3L})
    for (std::uint64_t N = 1; N <= 5; ++N)
      CHECK(!lattice_membership(adams_combination_window({{PAdicScalar(k, p), PAdicScalar(1, p)}}, N, p),
                                diagonal_window_lattice(N, 1, tab)));
}
