#include <doctest.h>

#include <cmath>
#include <random>

#include "bergman/errors.hpp"
#include "bergman/operators.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/spectra.hpp"

using namespace bergman;

namespace {

std::shared_ptr<const BasisOrder> basis(int n, int degree) { return std::make_shared<const BasisOrder>(n, degree); }

RadialProfile random_profile(std::mt19937_64& rng, int variant) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  switch (variant % 4) {
    case 0:
      return RadialProfile::poly_t2({c(rng), c(rng), c(rng)});
    case 1:
      return RadialProfile::power_t(0.5 + 2.0 * std::abs(c(rng)));
    case 2:
      return RadialProfile::step({0.0, 0.25 + 0.5 * std::abs(c(rng)), 1.0}, {c(rng), c(rng)});
    default:
      return RadialProfile::sampled({0.0, 0.3, 0.6, 1.0}, {c(rng), c(rng), c(rng), c(rng)});
  }
}

SymbolExpr random_polynomial_symbol(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::uniform_int_distribution<int> e(0, 2);
  std::vector<SymbolTerm> terms;
  for (int i = 0; i < 3; ++i) {
    std::vector<int> p(static_cast<std::size_t>(n)), q(static_cast<std::size_t>(n));
    for (auto& x : p) x = e(rng);
    for (auto& x : q) x = e(rng);
    terms.push_back(SymbolTerm{Complex(c(rng), c(rng)), MultiIndex(p), MultiIndex(q),
                               RadialProfile::poly_t2({c(rng), c(rng)})});
  }
  return SymbolExpr(n, std::move(terms));
}

double max_off_diagonal(const Eigen::MatrixXcd& m) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) out = std::max(out, std::abs(m(i, j)));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("constant symbol assembles to the identity") {
  for (int n = 1; n <= 3; ++n) {
    const auto order = basis(n, 5);
    const auto space = SpaceParams::make(n);
    const auto t = assemble(SymbolExpr::radial(n, RadialProfile::constant(1.0)), order, space);
    const auto id = TruncatedOperator::identity(order, space);
    CHECK((t.entries() - id.entries()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(t.is_diagonal());
    CHECK(t.exact_entries());
    CHECK(std::abs(frobenius_norm(id) - std::sqrt(static_cast<double>(order->size()))) < 1e-14);
  }
}

TEST_CASE("multiplication by z is a weighted shift") {
  const auto order = basis(1, 3);
  const auto t = assemble(SymbolExpr::monomial(1, MultiIndex{1}, MultiIndex{0}), order, SpaceParams::make(1));
  for (int m = 0; m < 3; ++m) {
    CHECK(std::abs(t.entries()(m + 1, m) - std::sqrt((m + 1.0) / (m + 2.0))) < 1e-15);
  }
  CHECK(std::abs(t.entries()(1, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  double others = 0.0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (r != c + 1) others = std::max(others, std::abs(t.entries()(r, c)));
    }
  }
  CHECK(others == 0.0);
  // oracle: the same entries by quadrature
  const auto space = SpaceParams::make(1);
  for (int m = 0; m < 3; ++m) {
    const Complex q = ball_integral(SymbolExpr::monomial(1, MultiIndex{1}, MultiIndex{0}), MultiIndex{m},
                                    MultiIndex{m + 1}, space) *
                      basis_coefficient(MultiIndex{m}, space) * basis_coefficient(MultiIndex{m + 1}, space);
    CHECK(std::abs(q - t.entries()(m + 1, m)) < 1e-14);
  }
}

TEST_CASE("radial symbol assembles to its eigenvalues") {
  const auto t = assemble(SymbolExpr::radial(1, RadialProfile::poly_t2({-0.5, 1.0})), basis(1, 3), SpaceParams::make(1));
  const std::vector<double> expected{0.0, 1.0 / 6.0, 0.25, 0.3};
  CHECK(t.is_diagonal());
  for (int i = 0; i < 4; ++i) CHECK(std::abs(t.entries()(i, i) - expected[static_cast<std::size_t>(i)]) < 1e-15);
}

TEST_CASE("radial symbols of every variant are exactly diagonal") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const auto space = SpaceParams::make(n, trial % 5 == 0 ? 1.5 : 0.0);
    const auto t = assemble(SymbolExpr::radial(n, random_profile(rng, trial), Complex(0.5, -1.0)), basis(n, 4), space);
    CHECK(max_off_diagonal(t.entries()) == 0.0);
    CHECK(t.is_diagonal());
  }
}

TEST_CASE("assembled entries match quadrature") {
  std::mt19937_64 rng(43);
  for (int n = 1; n <= 2; ++n) {
    for (double alpha : {0.0, 1.5}) {
      const auto space = SpaceParams::make(n, alpha);
      const int degree = n == 1 ? 6 : 5;
      const auto order = basis(n, degree);
      for (int trial = 0; trial < 3; ++trial) {
        const auto f = random_polynomial_symbol(rng, n);
        const auto t = assemble(f, order, space);
        for (std::size_t c = 0; c < order->size(); ++c) {
          for (std::size_t r = 0; r < order->size(); ++r) {
            const auto& m = (*order)[c];
            const auto& k = (*order)[r];
            const Complex q = ball_integral(f, m, k, space) * basis_coefficient(m, space) * basis_coefficient(k, space);
            CHECK(std::abs(q - t.entries()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))) < 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("composition") {
  const auto order = basis(2, 4);
  const auto space = SpaceParams::make(2);
  std::mt19937_64 rng(47);
  const auto b = assemble(random_polynomial_symbol(rng, 2), order, space);
  const auto id = TruncatedOperator::identity(order, space);
  CHECK((compose(id, b).entries() - b.entries()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((compose(b, id).entries() - b.entries()).cwiseAbs().maxCoeff() == 0.0);

  const auto f = RadialProfile::poly_t2({0.25, -1.0, 2.0});
  const auto g = RadialProfile::power_t(1.5);
  const auto product = compose(assemble(SymbolExpr::radial(2, f), order, space), assemble(SymbolExpr::radial(2, g), order, space));
  CHECK(product.is_diagonal());
  CHECK(product.exact_entries());
  for (std::size_t i = 0; i < order->size(); ++i) {
    const int d = (*order)[i].degree();
    const auto e = static_cast<Eigen::Index>(i);
    CHECK(std::abs(product.entries()(e, e) - omega(f, d, space) * omega(g, d, space)) < 1e-15);
  }

  CHECK_THROWS_AS(compose(id, TruncatedOperator::identity(basis(2, 3), space)), ConfigError);
}

TEST_CASE("radial flanks compose without truncation error") {
  for (int degree = 1; degree <= 8; ++degree) {
    const auto order = basis(1, degree);
    const auto space = SpaceParams::make(1);
    const auto g = RadialProfile::poly_t2({-0.5, 1.0});
    const SymbolExpr f(1, {SymbolTerm{Complex(1.0, 0.5), MultiIndex{1}, MultiIndex{0}, RadialProfile::constant(1.0)},
                           SymbolTerm{Complex(-0.25), MultiIndex{0}, MultiIndex{2}, RadialProfile::poly_t2({1.0, 1.0})}});
    const auto tg = assemble(SymbolExpr::radial(1, g), order, space);
    const auto tf = assemble(f, order, space);
    const auto chain = compose(compose(tg, tf), tg);
    CHECK(chain.exact_entries());
    for (int c = 0; c <= degree; ++c) {
      for (int r = 0; r <= degree; ++r) {
        const Complex direct = tf.entries()(r, c) * omega(g, c, space) * omega(g, r, space);
        CHECK(std::abs(chain.entries()(r, c) - direct) < 1e-15);
      }
    }
  }
  // two non-diagonal factors lose exactness
  const auto order = basis(1, 4);
  const auto z = assemble(SymbolExpr::monomial(1, MultiIndex{1}, MultiIndex{0}), order, SpaceParams::make(1));
  CHECK_FALSE(compose(adjoint(z), z).exact_entries());
}

TEST_CASE("adjoint agrees with the conjugate symbol") {
  const auto order = basis(1, 6);
  const auto space = SpaceParams::make(1);
  const auto z = SymbolExpr::monomial(1, MultiIndex{1}, MultiIndex{0});
  const auto a = adjoint(assemble(z, order, space));
  const auto b = assemble(z.conj(), order, space);
  CHECK((a.entries() - b.entries()).cwiseAbs().maxCoeff() <= 1e-13);

  std::mt19937_64 rng(53);
  for (int n = 1; n <= 3; ++n) {
    const auto f = random_polynomial_symbol(rng, n);
    const auto o = basis(n, 4);
    const auto sp = SpaceParams::make(n, 0.5);
    CHECK((adjoint(assemble(f, o, sp)).entries() - assemble(f.conj(), o, sp).entries()).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("apply and norms") {
  const auto order = basis(1, 3);
  const auto space = SpaceParams::make(1);
  const auto t = assemble(SymbolExpr::radial(1, RadialProfile::poly_t2({-0.5, 1.0})), order, space);
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(4);
  const auto w = bergman::apply(t, v);
  CHECK(std::abs(w(2) - 0.25) < 1e-15);
  CHECK(std::abs(max_abs_entry(t) - 0.3) < 1e-15);
  CHECK(std::abs(spectral_norm(t) - 0.3) < 1e-14);
  const Eigen::VectorXcd short_vector = Eigen::VectorXcd::Ones(3);
  CHECK_THROWS_AS(bergman::apply(t, short_vector), ConfigError);
}

TEST_CASE("norm estimate stays below the symbol's sup bound") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const auto space = SpaceParams::make(n, trial % 2 ? 1.5 : 0.0);
    const auto f = trial % 2 ? random_polynomial_symbol(rng, n) : SymbolExpr::radial(n, random_profile(rng, trial));
    const auto t = assemble(f, basis(n, 4), space);
    CHECK(spectral_norm(t) <= f.sup_bound() + 1e-10);
  }
}
