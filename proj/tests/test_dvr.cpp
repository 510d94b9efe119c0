#include <random>

#include "doctest.h"

#include "bpops/dvr.hpp"

using namespace bpops;

namespace {

QVector vec(std::initializer_list<long> xs) {
  QVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-200, 200), den(1, 60);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

Rational random_integral(std::mt19937_64& rng, Prime p) {
  for (;;) {
    Rational r = random_rational(rng);
    if (is_p_integral(r, p)) return r;
  }
}

}  // namespace

TEST_CASE("prime validation") {
  CHECK_NOTHROW(Prime(3));
  CHECK_NOTHROW(Prime(2));
  CHECK_THROWS_AS(Prime(1), std::invalid_argument);
  CHECK_THROWS_AS(Prime(9), std::invalid_argument);
  CHECK(Prime(5).power(3) == 125);
}

TEST_CASE("valuation examples") {
  const Prime p(3);
  CHECK(valuation(Rational(1), p) == 0);
  CHECK(valuation(Rational(18, 7), p) == 2);
  CHECK(valuation(Rational(0), p) == kInfiniteValuation);
  CHECK(valuation(Rational(5, 9), p) == -2);
  CHECK(PAdicScalar(Rational(18, 7), p).valuation() == 2);
  CHECK(PAdicScalar(0, p).valuation() == kInfiniteValuation);
}

TEST_CASE("PAdicScalar rejects denominators divisible by p") {
  const Prime p(3);
  CHECK_THROWS_AS(PAdicScalar(Rational(1, 3), p), NonIntegralError);
  CHECK_NOTHROW(PAdicScalar(Rational(1, 2), p));
  CHECK_THROWS(PAdicScalar(1, p) + PAdicScalar(1, Prime(5)));
}

TEST_CASE("unit part and residues") {
  const Prime p(3);
  CHECK(unit_part(Rational(18, 7), p) == Rational(2, 7));
  CHECK(residue(Rational(-1), p, 2) == 8);
  // 1/2 ≡ 5 mod 9 since 2·5 = 10
  CHECK(residue(Rational(1, 2), p, 2) == 5);
  CHECK_THROWS_AS(residue(Rational(1, 3), p, 1), NonIntegralError);
}

TEST_CASE("valuation is additive on products and ultrametric on sums") {
  std::mt19937_64 rng(11);
  for (unsigned pv : {3u, 5u, 7u}) {
    const Prime p(pv);
    for (int i = 0; i < 2000; ++i) {
      const Rational x = random_rational(rng), y = random_rational(rng);
      if (x == 0 || y == 0) continue;
      CHECK(valuation(Rational(x * y), p) == valuation(x, p) + valuation(y, p));
      const Rational s = x + y;
      if (s != 0) CHECK(valuation(s, p) >= std::min(valuation(x, p), valuation(y, p)));
    }
  }
}

TEST_CASE("echelon examples") {
  const Prime p(3);
  {
    std::vector<QVector> g{vec({1, 0}), vec({0, 1})};
    auto L = echelon_lattice(g, 2, p);
    CHECK(L.is_full());
    CHECK(L.pivot_exponents() == std::vector<long>{0, 0});
  }
  {
    std::vector<QVector> g{vec({3, 0}), vec({0, 1}), vec({3, 3})};
    auto L = echelon_lattice(g, 2, p);
    CHECK(L.pivot_exponents() == std::vector<long>{1, 0});
    CHECK(L.basis() == std::vector<QVector>{vec({3, 0}), vec({0, 1})});
    CHECK(L.colength() == 1);
  }
  {
    std::vector<QVector> g{vec({2, 4})};
    auto L = echelon_lattice(g, 2, p);
    REQUIRE(L.rank() == 1);
    CHECK(L.pivots().front() == Pivot{0, 0});
    CHECK(L.basis().front() == vec({1, 2}));
    CHECK(!L.colength());
  }
}

TEST_CASE("echelon input validation") {
  const Prime p(3);
  std::vector<QVector> bad{{Rational(1, 3), Rational(0)}};
  CHECK_THROWS_AS(echelon_lattice(bad, 2, p), NonIntegralError);
  std::vector<QVector> short_row{vec({1})};
  CHECK_THROWS_AS(echelon_lattice(short_row, 2, p), DimensionError);
}

TEST_CASE("echelon form is canonical and idempotent") {
  std::mt19937_64 rng(5);
  const Prime p(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 4;
    std::vector<QVector> g(1 + trial % 5, QVector(n));
    for (auto& row : g)
      for (auto& x : row) x = random_integral(rng, p);
    const auto L = echelon_lattice(g, n, p);
    CHECK(echelon_lattice(L.basis(), n, p) == L);
    // Shuffled and unit-scaled generators span the same lattice.
    auto h = g;
    std::shuffle(h.begin(), h.end(), rng);
    for (auto& row : h)
      for (auto& x : row) x *= 2;
    CHECK(echelon_lattice(h, n, p) == L);
    // Every generator is a member, with a sound certificate.
    for (const auto& row : g) {
      auto c = lattice_membership(row, L);
      REQUIRE(c);
      CHECK(combine(L.basis(), *c) == row);
    }
    // For a full lattice, pivot exponents and Smith invariants sum to the colength.
    if (L.is_full()) {
      long a = 0, b = 0;
      for (long e : L.pivot_exponents()) a += e;
      for (long e : L.elementary_divisors()) b += e;
      CHECK(a == b);
      CHECK(*L.colength() == a);
    }
  }
}

TEST_CASE("smith invariants differ from pivot exponents when off-diagonal entries couple") {
  // span{(3,1),(0,3)}: index 9, but the quotient is cyclic Z/9.
  const Prime p(3);
  std::vector<QVector> g{vec({3, 1}), vec({0, 3})};
  auto L = echelon_lattice(g, 2, p);
  CHECK(L.pivot_exponents() == std::vector<long>{1, 1});
  CHECK(L.elementary_divisors() == std::vector<long>{0, 2});
  CHECK(L.colength() == 2);
}

TEST_CASE("membership examples") {
  const Prime p(3);
  std::vector<QVector> full{vec({1, 0}), vec({0, 1})};
  auto F = echelon_lattice(full, 2, p);
  CHECK(lattice_membership({Rational(5, 7), Rational(-2)}, F));

  std::vector<QVector> g{vec({3, 0}), vec({0, 1})};
  auto L = echelon_lattice(g, 2, p);
  CHECK(!lattice_membership(vec({1, 0}), L));
  auto c = lattice_membership(vec({3, 1}), L);
  REQUIRE(c);
  CHECK(*c == vec({1, 1}));
  CHECK_THROWS_AS(lattice_membership(vec({1}), L), DimensionError);
}

TEST_CASE("containment and prefix projection") {
  const Prime p(3);
  std::vector<QVector> big{vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 3})};
  std::vector<QVector> small{vec({3, 0, 0}), vec({0, 1, 0}), vec({0, 0, 9})};
  auto B = echelon_lattice(big, 3, p), S = echelon_lattice(small, 3, p);
  CHECK(B.contains(S));
  CHECK(!S.contains(B));
  CHECK(S.project_prefix(2).pivot_exponents() == std::vector<long>{1, 0});
}

TEST_CASE("saturation") {
  const Prime p(3);
  // Q-span of (3,3) meets Z_(3)^2 in span (1,1).
  auto s = saturate({vec({3, 3})}, p);
  CHECK(echelon_lattice(s, 2, p).basis() == std::vector<QVector>{vec({1, 1})});
  // Two vectors of index 3 saturate to everything.
  auto t = saturate({vec({1, 1}), vec({1, -2})}, p);
  CHECK(echelon_lattice(t, 2, p).is_full());
}

TEST_CASE("kernel over Q") {
  QMatrix a(1, 3);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(0, 2) = 3;
  auto k = kernel(a);
  CHECK(k.size() == 2);
  for (const auto& v : k) CHECK(v[0] + 2 * v[1] + 3 * v[2] == 0);
}

TEST_CASE("commutant examples") {
  const Prime p(3);
  for (std::size_t k : {1u, 2u, 3u}) {
    std::vector<QMatrix> all;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) all.push_back(QMatrix::elementary(k, i, j));
    auto c = commutant(all, k, p);
    CHECK(c.rank() == 1);
    CHECK(c.basis.front() == QMatrix::identity(k));
    CHECK(commutant({}, k, p).rank() == k * k);
  }
  QMatrix d(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 2;
  std::vector<QMatrix> one{d};
  auto c = commutant(one, 2, p);
  CHECK(c.rank() == 2);
  for (const auto& x : c.basis) {
    CHECK(x(0, 1) == 0);
    CHECK(x(1, 0) == 0);
  }
  std::vector<QMatrix> wrong{QMatrix::identity(3)};
  CHECK_THROWS_AS(commutant(wrong, 2, p), DimensionError);
}

TEST_CASE("commutant basis is verified by re-multiplication") {
  std::mt19937_64 rng(3);
  const Prime p(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<QMatrix> mats;
    for (int m = 0; m < 1 + trial % 2; ++m) {
      QMatrix a(3, 3);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = (i <= j) ? random_integral(rng, p) : Rational(0);
      mats.push_back(a);
    }
    auto c = commutant(mats, 3, p);
    CHECK(c.rank() >= 1);
    for (const auto& x : c.basis) {
      CHECK(x.is_p_integral(p));
      for (const auto& m : mats) CHECK(x * m == m * x);
    }
  }
}
