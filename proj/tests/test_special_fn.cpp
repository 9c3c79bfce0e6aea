#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "xishift/special_fn.hpp"

using namespace xishift;

namespace {
bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }
}  // namespace

TEST_CASE("log_gamma at exact anchors") {
  CHECK(std::abs(log_gamma(1.0).value()) < 1e-14);
  CHECK(std::abs(log_gamma(2.0).value()) < 1e-14);
  CHECK(close(log_gamma(0.5).value(), 0.5 * std::log(kPi), 1e-14));
  // Gamma(6) = 120
  CHECK(close(log_gamma(6.0).value(), std::log(120.0), 1e-13));
}

TEST_CASE("log_gamma(1+i) against the product limit and a literal") {
  const cplx z{1.0, 1.0};
  const auto v = log_gamma(z);
  const cplx lit{oracle::kLogGamma1pI_re, oracle::kLogGamma1pI_im};
  CHECK(close(v.value(), lit, 1e-12));
  CHECK(close(v.value(), oracle::log_gamma_richardson(z, 100000), 1e-10));
  CHECK(v.abs_err() < 1e-12);
}

TEST_CASE("log_gamma matches the product limit on random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(0.1, 6.0), im(-8.0, 8.0);
  for (int i = 0; i < 12; ++i) {
    const cplx z{re(rng), im(rng)};
    CHECK(close(log_gamma(z).value(), oracle::log_gamma_richardson(z, 50000), 1e-9));
  }
}

TEST_CASE("log_gamma branch is continuous across the real axis and conjugate symmetric") {
  for (double x : {0.3, 2.5, -2.5, -7.3}) {
    const auto up = log_gamma({x, 1e-9}).value(), dn = log_gamma({x, -1e-9}).value();
    if (x > 0) CHECK(std::abs(up - dn) < 1e-7);
    CHECK(close(up, std::conj(dn), 1e-13 * std::max(1.0, std::abs(up))));
  }
}

TEST_CASE("reflection formula Gamma(z)Gamma(1-z) = pi / sin(pi z)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(-2.5, 3.5), im(-3.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    const cplx z{re(rng), im(rng)};
    const cplx lhs = std::exp(log_gamma(z).value() + log_gamma(1.0 - z).value()) * std::sin(kPi * z) / kPi;
    CHECK(close(lhs, 1.0, 1e-11));
  }
}

TEST_CASE("log_gamma rejects poles") {
  CHECK_THROWS_AS(log_gamma(0.0), PoleError);
  CHECK_THROWS_AS(log_gamma(-3.0), PoleError);
  CHECK_NOTHROW(log_gamma(-3.5));
}

TEST_CASE("zeta at classical values") {
  CHECK(close(zeta(2.0).value(), kPi * kPi / 6.0, 1e-13));
  CHECK(close(zeta(4.0).value(), std::pow(kPi, 4) / 90.0, 1e-13));
  CHECK(close(zeta(0.0).value(), -0.5, 1e-13));
  CHECK(close(zeta(-1.0).value(), -1.0 / 12.0, 1e-13));
  const auto z2 = zeta(-2.0);
  CHECK(z2.abs() < 1e-11);
  CHECK(z2.abs() <= z2.abs_err());
  CHECK(std::abs(zeta(-20.0).value()) < 1e-10);
  CHECK(close(zeta(-13.0).value(), -1.0 / 12.0, 1e-9));
  CHECK_THROWS_AS(zeta(1.0), PoleError);
  CHECK(close(zeta_times_sm1(1.0).value(), 1.0, 1e-13));
}

TEST_CASE("zeta vanishes at the first nontrivial zero") {
  const auto v = zeta({0.5, oracle::kFirstZero});
  CHECK(v.abs() < 1e-12);
  CHECK(v.abs_err() < 1e-10);
}

TEST_CASE("zeta against a direct sum for Re s > 1") {
  for (cplx s : {cplx{1.5, 0.0}, cplx{2.0, 30.0}, cplx{3.0, -12.0}, cplx{1.2, 5.0}}) {
    CHECK(close(zeta(s).value(), oracle::hurwitz_direct(s, 1.0, 20000), 1e-10));
  }
}

TEST_CASE("Hurwitz zeta") {
  const double G = oracle::catalan_alternating(400);
  CHECK(std::abs(G - oracle::kCatalan) < 1e-13);
  // zeta(2, 1/4) = pi^2 + 8G
  CHECK(close(hurwitz_zeta(2.0, 0.25).value(), kPi * kPi + 8 * G, 1e-12));
  for (double a : {0.1, 0.37, 0.8}) {
    const cplx s{1.7, 9.0};
    CHECK(close(hurwitz_zeta(s, a).value(), oracle::hurwitz_direct(s, a, 20000), 1e-10));
  }
  CHECK(close(hurwitz_zeta({0.3, 4.0}, 1.0).value(), zeta({0.3, 4.0}).value(), 1e-12));
  CHECK_THROWS_AS(hurwitz_zeta(2.0, 0.0), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta(2.0, 1.5), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta(1.0, 0.5), PoleError);
}

TEST_CASE("Dirichlet L for the character mod 4") {
  const auto chi = character_from_label(4, 1);
  REQUIRE(!chi.is_principal());
  CHECK(close(dirichlet_l(1.0, chi).value(), kPi / 4.0, 1e-12));
  CHECK(close(dirichlet_l(2.0, chi).value(), oracle::kCatalan, 1e-12));
  // L(0) = -B_{1,chi} = 1/2
  CHECK(close(dirichlet_l(0.0, chi).value(), 0.5, 1e-12));
}

TEST_CASE("principal character gives an Euler factor times zeta") {
  const auto chi0 = character_from_label(6, 0);
  REQUIRE(chi0.is_principal());
  for (cplx s : {cplx{2.0, 0.0}, cplx{0.5, 20.0}, cplx{3.0, -4.0}}) {
    const cplx want = zeta(s).value() * (1.0 - std::pow(2.0, -s)) * (1.0 - std::pow(3.0, -s));
    CHECK(close(dirichlet_l(s, chi0).value(), want, 1e-11));
  }
  CHECK_THROWS_AS(dirichlet_l(1.0, chi0), PoleError);
}

TEST_CASE("EvalConfig validation and accuracy failures") {
  EvalConfig bad;
  bad.target_abs_err = 0.0;
  CHECK_THROWS_AS(zeta(2.0, bad), DomainError);
  bad = {};
  bad.max_terms = 4;
  CHECK_THROWS_AS(zeta(2.0, bad), DomainError);
  bad = {};
  bad.em_order = 1;
  CHECK_THROWS_AS(zeta(2.0, bad), DomainError);

  EvalConfig small;
  small.max_terms = 100;
  CHECK_THROWS_AS(zeta({0.5, 5000.0}, small), AccuracyError);
  EvalConfig strict;
  strict.target_abs_err = 1e-300;
  CHECK_THROWS_AS(log_gamma({3.0, 2.0}, strict), AccuracyError);
}

TEST_CASE("error estimates cover the actual error") {
  const auto v = zeta(2.0);
  CHECK(std::abs(v.value() - kPi * kPi / 6.0) <= v.abs_err() + 1e-15);
  const auto g = log_gamma(cplx{1.0, 1.0});
  CHECK(std::abs(g.value() - cplx{oracle::kLogGamma1pI_re, oracle::kLogGamma1pI_im}) <= g.abs_err() + 1e-15);
}
