#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "xishift/special_fn.hpp"
#include "xishift/zeros.hpp"

using namespace xishift;

namespace {
const auto kRiemann = LFunctionTarget::riemann();
const AnalyticFunction kXi = [](cplx s) { return xi(s).value(); };

std::string csv_of(const ZeroList& z) {
  std::ostringstream os;
  write_zero_csv(os, z);
  return os.str();
}
}  // namespace

TEST_CASE("scan finds the first zeta zero") {
  const auto f = critical_line_function(kRiemann);
  const auto z = locate_zeros_scan(f, 0.01, 15.0, 0.05);
  REQUIRE(z.records.size() == 1);
  CHECK(z.records[0].index == 1);
  CHECK(std::abs(z.records[0].ordinate - oracle::kFirstZero) < 1e-9);
  CHECK(z.records[0].residual < 1e-8);
  CHECK(!z.certificate);
  CHECK(z.method == "scan");
}

TEST_CASE("scan to 50 matches tabulated ordinates and the argument principle") {
  const auto z = locate_zeros_scan(critical_line_function(kRiemann), 0.01, 50.0, 0.05);
  REQUIRE(z.records.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(z.records[i].ordinate - oracle::kZetaZeros[i]) < 1e-9);
  CHECK(argument_principle_count(kXi, {-0.5, 1.5, 0.01, 50.0}) == 10);
}

TEST_CASE("scan edge cases") {
  CHECK(locate_zeros_scan([](double) { return 1.0; }, 0.0, 10.0, 0.1).records.empty());
  // a zero exactly on a grid point is reported once
  const auto z = locate_zeros_scan([](double t) { return t - 2.0; }, 0.0, 4.0, 0.5);
  REQUIRE(z.records.size() == 1);
  CHECK(z.records[0].ordinate == doctest::Approx(2.0).epsilon(1e-12));
  const auto two = locate_zeros_scan([](double t) { return std::sin(t); }, 1.0, 7.0, 0.1);
  REQUIRE(two.records.size() == 2);
  CHECK(two.records[1].ordinate == doctest::Approx(2 * kPi).epsilon(1e-12));
}

TEST_CASE("argument principle on polynomials") {
  const AnalyticFunction p = [](cplx z) { return (z - 1.0) * (z - cplx{0, 2}) * (z + cplx{3, 3}); };
  CHECK(argument_principle_count(p, {-1.0, 2.0, -1.0, 3.0}) == 2);
  CHECK(argument_principle_count(p, {-5.0, 5.0, -5.0, 5.0}) == 3);
  CHECK(argument_principle_count(p, {1.5, 5.0, -5.0, 5.0}) == 0);
  // a zero on the contour forces a nudge
  const auto w = argument_principle(p, {1.0, 2.0, -1.0, 1.0});
  CHECK(w.nudges >= 1);
  CHECK(w.rounding_distance < 0.1);
}

TEST_CASE("phase method: certificates and A/B zeros") {
  const DeformationParams p(0.5, 0.0);
  for (auto tag : {FunctionTag::A, FunctionTag::B}) {
    const auto z = locate_zeros_phase(p, kRiemann, 0.0, 100.0, tag);
    REQUIRE(z.certificate);
    CHECK(z.certificate->complete());
    CHECK(z.method == "phase");
    for (const auto& r : z.records) {
      CHECK(r.residual < 1e-8);
      CHECK(r.bracket_width <= 1e-9);
      CHECK(std::abs(r.derivative_est) > 1e-6);
    }
  }
}

TEST_CASE("A zeros agree with a bisection of Re xi(1/2 + h + it)") {
  // on the line, A_{h,0}(1/2 + it) = Re xi(1/2 + h + it)
  const double h = 0.5;
  const auto g = [&](double t) {
    const cplx v = xi({0.5 + h, t}).value();
    return v.real() / std::abs(v);
  };
  const auto want = oracle::bisect_roots(g, 0.5, 40.0, 0.02);
  const auto got = locate_zeros_phase(DeformationParams(h, 0.0), kRiemann, 0.5, 40.0, FunctionTag::A).ordinates();
  REQUIRE(got.size() == want.size());
  REQUIRE(!want.empty());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-9);
}

TEST_CASE("B has a zero at t = 0 when theta = 0") {
  const auto z = locate_zeros_phase(DeformationParams(0.5, 0.0), kRiemann, -1.0, 1.0, FunctionTag::B);
  REQUIRE(z.records.size() == 1);
  CHECK(std::abs(z.records[0].ordinate) < 1e-9);
  CHECK(z.records[0].index == 0);
}

TEST_CASE("argument principle agrees with the phase count on random rectangles") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lo(0.5, 60.0), len(1.0, 15.0), th(0.0, 2 * kPi);
  for (int i = 0; i < 6; ++i) {
    const DeformationParams p(0.5 + 0.5 * (i % 2), th(rng));
    const double a = lo(rng), b = a + len(rng);
    for (auto tag : {FunctionTag::A, FunctionTag::B}) {
      const auto z = locate_zeros_phase(p, kRiemann, a - 1.0, b + 1.0, tag);
      const auto w = argument_principle(deformed_function(p, kRiemann, tag), {-0.5, 1.5, a, b});
      CHECK(w.count == z.count_between(w.contour.im_lo, w.contour.im_hi));
    }
  }
}

TEST_CASE("interlacing") {
  for (double h : {0.5, 0.25, 1.0}) {
    const DeformationParams p(h, 0.4);
    const auto a = locate_zeros_phase(p, kRiemann, 0.0, 80.0, FunctionTag::A);
    const auto b = locate_zeros_phase(p, kRiemann, 0.0, 80.0, FunctionTag::B);
    const auto rep = verify_interlacing(a, b);
    CHECK(rep.pass());
    CHECK(rep.n_a + rep.n_b > 20);
    CHECK(std::abs(static_cast<long>(rep.n_a) - static_cast<long>(rep.n_b)) <= 1);

    auto dup = a;
    dup.records.insert(dup.records.begin() + 3, dup.records[3]);
    dup.records[3].ordinate -= 1e-6;
    CHECK(!verify_interlacing(dup, b).strict());
  }
  const DeformationParams p(0.5, 0.0);
  const auto a = locate_zeros_phase(p, kRiemann, 0.0, 30.0, FunctionTag::A);
  const auto b = locate_zeros_phase(p, kRiemann, 0.0, 31.0, FunctionTag::B);
  CHECK_THROWS_AS(verify_interlacing(a, b), IncompatibleRanges);
  const auto c = locate_zeros_phase(DeformationParams(0.5, 1.0), kRiemann, 0.0, 30.0, FunctionTag::B);
  CHECK_THROWS_AS(verify_interlacing(a, c), IncompatibleRanges);
}

TEST_CASE("parallel scan is bit-identical") {
  const DeformationParams p(0.5, 1.3);
  ZeroSearchOptions o1, o4;
  o4.jobs = 4;
  for (auto tag : {FunctionTag::A, FunctionTag::B}) {
    const auto a = locate_zeros_phase(p, kRiemann, 0.0, 120.0, tag, {}, o1);
    const auto b = locate_zeros_phase(p, kRiemann, 0.0, 120.0, tag, {}, o4);
    CHECK(csv_of(a) == csv_of(b));
  }
}

TEST_CASE("zeros are symmetric under t -> -t for theta = 0") {
  const DeformationParams p(0.5, 0.0);
  const auto z = locate_zeros_phase(p, kRiemann, -40.0, 40.0, FunctionTag::A).ordinates();
  REQUIRE(z.size() % 2 == 0);
  for (std::size_t i = 0; i < z.size(); ++i) CHECK(std::abs(z[i] + z[z.size() - 1 - i]) < 1e-9);
}

TEST_CASE("negative h mirrors positive h with -theta") {
  for (auto tag : {FunctionTag::A, FunctionTag::B}) {
    const auto neg = locate_zeros_phase(DeformationParams(-0.5, 0.9), kRiemann, 0.0, 60.0, tag);
    const auto pos = locate_zeros_phase(DeformationParams(0.5, -0.9), kRiemann, 0.0, 60.0, tag);
    CHECK(neg.params.h() == -0.5);
    REQUIRE(neg.records.size() == pos.records.size());
    for (std::size_t i = 0; i < neg.records.size(); ++i)
      CHECK(neg.records[i].ordinate == doctest::Approx(pos.records[i].ordinate).epsilon(1e-12));
  }
}

TEST_CASE("zero counts") {
  const auto r = count_zeros_compare(DeformationParams(0.5, 0.0), kRiemann, 100.0);
  CHECK(r.complete);
  CHECK(std::abs(r.error_over_log) <= 3.0);
  CHECK(std::abs(r.n_zeros - r.phase_count) <= 2.0);
  const auto d = count_zeros_compare(DeformationParams(0.5, 0.0), LFunctionTarget::parse("dirichlet:4.1"), 50.0);
  CHECK(d.conductor == 4);
  CHECK(std::abs(d.error_over_log) <= 1.0);
  CHECK(zero_count_main_term(2 * kPi, 1) == doctest::Approx(-2.0));
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(scan_phase(DeformationParams(0.0, 0.0), kRiemann, 0.0, 10.0), DomainError);
  std::vector<PhasePoint> pts(3);
  pts[0].t = 0.0;
  pts[1].t = 1.0;
  pts[1].core_arg = 1.0;
  pts[2].t = 2.0;
  pts[2].core_arg = 0.5;
  CHECK_THROWS_AS(require_monotone_phase(pts), NonMonotonePhase);
  pts[2].core_arg = 1.5;
  CHECK_NOTHROW(require_monotone_phase(pts));
  CHECK(parse_tag("B") == FunctionTag::B);
  CHECK_THROWS(parse_tag("C"));
}

TEST_CASE("zero CSV layout") {
  const auto z = locate_zeros_phase(DeformationParams(0.5, 0.0), kRiemann, 0.0, 30.0, FunctionTag::A);
  const auto s = csv_of(z);
  std::istringstream is(s);
  std::string line;
  std::getline(is, line);
  CHECK(line == "index,gamma,function_tag,h,theta,target,residual,bracket_width,phase_value,derivative_est");
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
    CHECK(line.find(",A,") != std::string::npos);
  }
  CHECK(rows == z.records.size());
  CHECK(s.find('\r') == std::string::npos);
}
