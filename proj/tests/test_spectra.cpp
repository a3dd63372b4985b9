#include <doctest.h>

#include <cmath>
#include <random>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/spectra.hpp"

using namespace bergman;

TEST_CASE("omega examples") {
  const auto s1 = SpaceParams::make(1);
  for (int n = 1; n <= 3; ++n) {
    for (double s : {0.0, 1.0, 5.0, 12.5}) {
      CHECK(std::abs(omega(RadialProfile::constant(-2.5), s, SpaceParams::make(n)) + 2.5) < 1e-15);
    }
  }
  CHECK(std::abs(omega(RadialProfile::power_t(1.0), 0.0, s1) - 0.5) < 1e-15);
  CHECK(std::abs(omega(RadialProfile::power_t(1.0), 0.0, s1) - radial_integral(RadialProfile::power_t(1.0), 0.0, s1).value) <
        1e-15);
  const auto g = RadialProfile::poly_t2({-0.5, 1.0});
  for (int s = 0; s <= 10; ++s) CHECK(std::abs(omega(g, s, s1) - s / (2.0 * (s + 2))) < 1e-15);
  CHECK(omega(g, 0, s1) == doctest::Approx(0.0));
  CHECK(std::abs(omega(g, 1, s1) - 1.0 / 6.0) < 1e-15);
}

TEST_CASE("omega sequences") {
  const auto one = omega_sequence(RadialProfile::constant(1.0), SpaceParams::make(2), 5);
  CHECK(one.values == std::vector<double>(6, 1.0));
  CHECK(one.s_max() == 5);

  const auto g = omega_sequence(RadialProfile::poly_t2({-0.5, 1.0}), SpaceParams::make(1), 3);
  const std::vector<double> expected{0.0, 1.0 / 6.0, 0.25, 0.3};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(g.values[i] - expected[i]) < 1e-15);

  const auto t2 = omega_sequence(RadialProfile::power_t(1.0), SpaceParams::make(2), 2);
  CHECK(std::abs(t2.values[0] - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(t2.values[1] - 3.0 / 4.0) < 1e-15);
  CHECK(std::abs(t2.values[2] - 4.0 / 5.0) < 1e-15);
  CHECK(t2.method == OmegaMethod::ClosedForm);

  const auto step = omega_sequence(RadialProfile::step({0.0, 0.5, 1.0}, {1.0, 2.0}), SpaceParams::make(1), 2);
  CHECK(step.method == OmegaMethod::Quadrature);
}

TEST_CASE("closed form agrees with quadrature") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (double alpha : {0.0, 1.5}) {
    for (int n = 1; n <= 3; ++n) {
      const auto space = SpaceParams::make(n, alpha);
      for (int trial = 0; trial < 4; ++trial) {
        const auto rho = RadialProfile::poly_t2({c(rng), c(rng), c(rng), c(rng)});
        for (int s = 0; s <= 60; s += 3) {
          const auto closed = omega_closed_form(rho, s, space);
          REQUIRE(closed.has_value());
          CHECK(std::abs(*closed - radial_integral(rho, s, space, RadialMethod::Adaptive).value) <= 1e-12);
        }
      }
    }
  }
  CHECK_FALSE(omega_closed_form(RadialProfile::step({0.0, 1.0}, {1.0}), 1.0, SpaceParams::make(1)).has_value());
  // non-integer exponent still has a closed form
  const auto half = omega_closed_form(RadialProfile::power_t(0.5), 2.0, SpaceParams::make(1, 0.5));
  REQUIRE(half.has_value());
  CHECK(std::abs(*half - radial_integral(RadialProfile::power_t(0.5), 2.0, SpaceParams::make(1, 0.5)).value) < 1e-12);
}

TEST_CASE("omega is linear, bounded and positive") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto space = SpaceParams::make(1 + trial % 3, trial % 2 ? 1.5 : 0.0);
    const std::vector<double> fa{c(rng), c(rng), c(rng)};
    const std::vector<double> fb{c(rng), c(rng)};
    const double a = c(rng), b = c(rng);
    std::vector<double> sum(3);
    for (std::size_t i = 0; i < 3; ++i) sum[i] = a * fa[i] + (i < 2 ? b * fb[i] : 0.0);
    const auto pa = RadialProfile::poly_t2(fa);
    const auto pb = RadialProfile::poly_t2(fb);
    const auto step = RadialProfile::step({0.0, 0.3, 1.0}, {c(rng), c(rng)});
    for (int s = 0; s <= 15; ++s) {
      const double lhs = omega(RadialProfile::poly_t2(sum), s, space);
      CHECK(std::abs(lhs - (a * omega(pa, s, space) + b * omega(pb, s, space))) <= 1e-13);
      CHECK(std::abs(omega(pa, s, space)) <= pa.sup_bound() + 1e-15);
      CHECK(std::abs(omega(step, s, space)) <= step.sup_bound() + 1e-12);
    }
  }
  const auto positive = RadialProfile::sampled({0.0, 0.4, 0.7, 1.0}, {0.0, 0.2, 0.0, 0.5});
  for (double v : omega_sequence(positive, SpaceParams::make(2), 12).values) CHECK(v > 0.0);
}

TEST_CASE("degree zero sets") {
  const auto one = degree_zero_set(omega_sequence(RadialProfile::constant(1.0), SpaceParams::make(1), 10), 1e-10);
  CHECK(one.degrees.empty());

  const auto g = degree_zero_set(omega_sequence(RadialProfile::poly_t2({-0.5, 1.0}), SpaceParams::make(1), 20), 1e-10);
  CHECK(g.degrees == std::vector<int>{0});
  CHECK(std::abs(g.margin - 1.0 / 6.0) < 1e-15);
  CHECK(g.margin > g.eps_zero);

  const std::vector<int> w{0, 2};
  const auto engineered = engineered_zero_profile(w, SpaceParams::make(1));
  const auto* poly = engineered.get_if<PolyInT2>();
  REQUIRE(poly != nullptr);
  REQUIRE(poly->coeffs.size() == 3);
  CHECK(std::abs(poly->coeffs[0] - 0.2) < 1e-14);
  CHECK(std::abs(poly->coeffs[1] + 16.0 / 15.0) < 1e-14);
  CHECK(poly->coeffs[2] == 1.0);
  const auto ew = degree_zero_set(omega_sequence(engineered, SpaceParams::make(1), 20), 1e-10);
  CHECK(ew.degrees == w);
}

TEST_CASE("ambiguous zeros are refused") {
  // omega of the constant 5e-10 sits between eps and 10 eps
  CHECK_THROWS_AS(degree_zero_set(omega_sequence(RadialProfile::constant(5e-10), SpaceParams::make(1), 3), 1e-10),
                  AmbiguousZero);
  CHECK_NOTHROW(degree_zero_set(omega_sequence(RadialProfile::constant(5e-10), SpaceParams::make(1), 3), 1e-11));
  CHECK_THROWS_AS(degree_zero_set(omega_sequence(RadialProfile::constant(1.0), SpaceParams::make(1), 3), 0.0),
                  ConfigError);
}

TEST_CASE("engineered zeros in higher dimensions and weights") {
  for (int n = 1; n <= 3; ++n) {
    for (double alpha : {0.0, 1.5}) {
      const auto space = SpaceParams::make(n, alpha);
      const std::vector<int> w{1, 3, 4};
      const auto rho = engineered_zero_profile(w, space);
      const auto ws = degree_zero_set(omega_sequence(rho, space, 12), 1e-10);
      CHECK(ws.degrees == w);
    }
  }
  const std::vector<int> repeated{2, 2};
  CHECK_THROWS(engineered_zero_profile(repeated, SpaceParams::make(1)));
}

TEST_CASE("sparsity verdicts") {
  DegreeZeroSet finite;
  finite.degrees = {0, 2, 5};
  CHECK(sparsity_verdict(finite) == SumClass::Converges);
  CHECK(sparsity_verdict(finite, IntegerSetDesc::all_naturals()) == SumClass::Diverges);
  CHECK(sparsity_verdict(finite, IntegerSetDesc::geometric(2)) == SumClass::Converges);
  const auto odd_complement = IntegerSetDesc::complement(IntegerSetDesc::arithmetic(0, 1));
  CHECK(sparsity_verdict(finite, odd_complement) == SumClass::Converges);
}
