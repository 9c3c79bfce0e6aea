#include <doctest.h>

#include <numeric>
#include <set>

#include "oracles.hpp"
#include "xishift/characters.hpp"

using namespace xishift;

namespace {

// Smallest d | q with chi(a) = 1 whenever a = 1 mod d and gcd(a, q) = 1.
std::int64_t brute_conductor(const DirichletCharacter& chi) {
  const std::int64_t q = chi.modulus();
  const auto v = chi.values();
  for (std::int64_t d = 1; d <= q; ++d) {
    if (q % d) continue;
    bool ok = true;
    for (std::int64_t a = 1; a < q && ok; a += d)
      if (std::gcd(a, q) == 1 && std::abs(v[a] - 1.0) > 1e-9) ok = false;
    if (ok) return d;
  }
  return q;
}

}  // namespace

TEST_CASE("mod 8 characters by hand") {
  const auto chars = enumerate_characters(8);
  REQUIRE(chars.size() == 4);
  std::set<std::vector<int>> tables;
  for (const auto& c : chars) {
    std::vector<int> row;
    for (std::int64_t a : {1, 3, 5, 7}) {
      const cplx v = c.value(a);
      CHECK(std::abs(v.imag()) < 1e-15);
      row.push_back(static_cast<int>(std::lround(v.real())));
    }
    CHECK(c.value(2) == cplx{});
    CHECK(c.value(4) == cplx{});
    tables.insert(row);
  }
  const std::set<std::vector<int>> want{{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
  CHECK(tables == want);
  int primitive = 0;
  for (const auto& c : chars) primitive += c.is_primitive();
  CHECK(primitive == 2);
}

TEST_CASE("conductor agrees with brute force for q <= 60") {
  for (std::int64_t q = 1; q <= 60; ++q)
    for (const auto& c : enumerate_characters(q)) {
      CHECK(c.conductor() == brute_conductor(c));
      CHECK(conductor(c) == c.conductor());
    }
}

TEST_CASE("primitive count follows the Moebius formula") {
  for (int q = 1; q <= 100; ++q) {
    std::int64_t n = 0;
    const auto chars = enumerate_characters(q);
    CHECK(static_cast<std::int64_t>(chars.size()) == euler_phi(q));
    CHECK(euler_phi(q) == oracle::phi(q));
    for (const auto& c : chars) n += c.is_primitive();
    CHECK(n == oracle::primitive_count(q));
  }
}

TEST_CASE("orthogonality and multiplicativity") {
  for (std::int64_t q : {5, 9, 12, 16, 21, 35}) {
    const auto chars = enumerate_characters(q);
    for (std::size_t i = 0; i < chars.size(); ++i) {
      for (std::size_t j = 0; j < chars.size(); ++j) {
        cplx s = 0.0;
        for (std::int64_t a = 0; a < q; ++a) s += chars[i].value(a) * std::conj(chars[j].value(a));
        const double want = i == j ? static_cast<double>(euler_phi(q)) : 0.0;
        CHECK(std::abs(s - want) < 1e-10);
      }
      for (std::int64_t a = 1; a < q; ++a)
        for (std::int64_t b = 1; b < q; ++b)
          CHECK(std::abs(chars[i].value(a * b % q) - chars[i].value(a) * chars[i].value(b)) < 1e-12);
    }
  }
}

TEST_CASE("labels are distinct and round-trip through the spec string") {
  for (std::int64_t q : {1, 7, 24, 45}) {
    std::set<std::int64_t> labels;
    for (const auto& c : enumerate_characters(q)) {
      labels.insert(c.label());
      const auto back = parse_character(c.spec());
      CHECK(back.modulus() == q);
      CHECK(back.label() == c.label());
      CHECK(back.values() == c.values());
    }
    CHECK(static_cast<std::int64_t>(labels.size()) == euler_phi(q));
  }
}

TEST_CASE("parity, realness and conjugation") {
  for (std::int64_t q : {7, 15, 16}) {
    for (const auto& c : enumerate_characters(q)) {
      const cplx m1 = c.value(q - 1);
      CHECK(std::abs(m1 - (c.parity() ? -1.0 : 1.0)) < 1e-12);
      const auto cc = c.conjugate();
      bool real = true;
      for (std::int64_t a = 0; a < q; ++a) {
        CHECK(std::abs(cc.value(a) - std::conj(c.value(a))) < 1e-12);
        real = real && std::abs(c.value(a).imag()) < 1e-12;
      }
      CHECK(real == c.is_real());
    }
  }
}

TEST_CASE("Gauss sums of primitive characters") {
  for (std::int64_t q = 3; q <= 40; ++q)
    for (const auto& c : enumerate_characters(q)) {
      if (!c.is_primitive()) continue;
      const auto tau = gauss_sum(c);
      CHECK(std::abs(std::norm(tau.value()) - static_cast<double>(q)) < 1e-9);
      const cplx prod = tau.value() * gauss_sum(c.conjugate()).value();
      CHECK(std::abs(prod - c.value(q - 1) * static_cast<double>(q)) < 1e-9);
    }
  // quadratic character mod 4: tau = 2i
  CHECK(std::abs(gauss_sum(character_from_label(4, 1)).value() - cplx{0.0, 2.0}) < 1e-12);
}

TEST_CASE("bad input") {
  CHECK_THROWS_AS(enumerate_characters(0), DomainError);
  CHECK_THROWS_AS(enumerate_characters(2'000'000), DomainError);
  CHECK_THROWS_AS(parse_character("4"), DomainError);
  CHECK_THROWS_AS(parse_character("4.x"), DomainError);
  CHECK_THROWS_AS(parse_character("4.1z"), DomainError);
  CHECK_THROWS_AS(character_from_label(4, 2), DomainError);
  CHECK_THROWS_AS(character_from_label(4, -1), DomainError);
}
