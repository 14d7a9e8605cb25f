#include <gtest/gtest.h>

#include <array>
#include <random>
#include <span>

#include "hartogs/hartogs.hpp"
#include "hartogs/numerics/complex.hpp"
#include "hartogs/numerics/jet.hpp"
#include "hartogs/numerics/wirtinger.hpp"
#include "oracles.hpp"

using namespace hartogs;

namespace {

using J1 = Jet<double, 1, 3>;
using J2 = Jet<double, 2, 3>;

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }
double choose(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

}  // namespace

TEST(Jet, SquareOfVariable) {
  const J1 x = J1::variable(3.0, 0);
  const J1 f = x * x;
  EXPECT_EQ(f.value(), 9.0);
  EXPECT_EQ(f.derivative({1}), 6.0);
  EXPECT_EQ(f.derivative({2}), 2.0);
  EXPECT_EQ(f.derivative({3}), 0.0);
}

TEST(Jet, GeometricSeriesOfNegLog) {
  const J1 x = J1::variable(0.0, 0);
  const J1 f = -log(1.0 - x);
  EXPECT_EQ(f.value(), 0.0);
  EXPECT_NEAR(f.derivative({1}), 1.0, 1e-15);
  EXPECT_NEAR(f.derivative({2}), 1.0, 1e-15);
  EXPECT_NEAR(f.derivative({3}), 2.0, 1e-15);
}

TEST(Jet, AsymmetricMixedPartials) {
  // f = x^2 y at (1, 2)
  const J2 x = J2::variable(1.0, 0);
  const J2 y = J2::variable(2.0, 1);
  const J2 f = x * x * y;
  EXPECT_EQ(f.derivative({1, 0}), 4.0);
  EXPECT_EQ(f.derivative({0, 1}), 1.0);
  EXPECT_EQ(f.derivative({1, 1}), 2.0);
  EXPECT_EQ(f.derivative({2, 0}), 4.0);
  EXPECT_EQ(f.derivative({2, 1}), 2.0);
  EXPECT_EQ(f.derivative({1, 2}), 0.0);
  EXPECT_EQ(f.derivative({0, 3}), 0.0);
}

TEST(Jet, UnitIndexOrdering) {
  using J = Jet<double, 4, 2>;
  for (int d = 0; d < 4; ++d) {
    const J v = J::variable(0.5, d);
    std::array<int, 4> e{};
    e[static_cast<std::size_t>(d)] = 1;
    EXPECT_EQ(v.derivative(e), 1.0);
    EXPECT_EQ(v[1 + d], 1.0);
  }
}

TEST(Jet, ProductObeysLeibnizRule) {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const J2 x = J2::variable(u(gen), 0);
    const J2 y = J2::variable(u(gen), 1);
    const J2 f = exp(x * y) + x * x * x;
    const J2 g = 1.0 / (2.0 + x - 0.5 * y * y);
    const J2 fg = f * g;
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; a + b <= 3; ++b) {
        double ref = 0.0;
        for (int i = 0; i <= a; ++i)
          for (int j = 0; j <= b; ++j)
            ref += choose(a, i) * choose(b, j) * f.derivative({i, j}) * g.derivative({a - i, b - j});
        EXPECT_LT(std::abs(fg.derivative({a, b}) - ref), 1e-12 * std::max(1.0, std::abs(ref)));
      }
  }
}

TEST(Jet, ExactOnIntegerPolynomials) {
  const J2 x = J2::variable(2.0, 0);
  const J2 y = J2::variable(-1.0, 1);
  const J2 p = (x + y) * (x - 3.0 * y) * x;
  // p = x^3 - 2 x^2 y - 3 x y^2
  EXPECT_EQ(p.value(), 8.0 + 8.0 - 6.0);
  EXPECT_EQ(p.derivative({1, 0}), 12.0 + 8.0 - 3.0);
  EXPECT_EQ(p.derivative({0, 1}), -8.0 + 12.0);
  EXPECT_EQ(p.derivative({1, 1}), -4.0 * 2.0 - 6.0 * -1.0);
  EXPECT_EQ(p.derivative({3, 0}), 6.0);
  EXPECT_EQ(p.derivative({1, 2}), -6.0);
}

TEST(Jet, ElementaryFunctionIdentities) {
  const J2 x = J2::variable(0.3, 0);
  const J2 y = J2::variable(0.7, 1);
  const J2 f = 1.0 + x * x + 0.5 * y;
  const std::vector<J2> checks{log(exp(f)) - f, sqrt(f) * sqrt(f) - f, pow(f, 3.0) - f * f * f, f * reciprocal(f) - 1.0,
                               pow(f, 0.5) - sqrt(f)};
  for (const auto& c : checks)
    for (int k = 0; k < J2::kSize; ++k) EXPECT_LT(std::abs(c[k]), 1e-14);
}

TEST(Jet, LogOfNonPositiveThrows) {
  const J1 x = J1::variable(-0.5, 0);
  EXPECT_THROW(log(x), DomainError);
}

TEST(Jet, ComplexPowerMatchesRealPowerOnPositiveAxis) {
  const J2 x = J2::variable(0.8, 0);
  const J2 y = J2::variable(0.1, 1);
  const Cx<J2> c(x + y * y, J2(0.0));
  const Cx<J2> p = cpow(c, 1.7);
  const J2 ref = pow(x + y * y, 1.7);
  for (int k = 0; k < J2::kSize; ++k) {
    EXPECT_LT(std::abs(p.re[k] - ref[k]), 1e-14);
    EXPECT_LT(std::abs(p.im[k]), 1e-14);
  }
}

TEST(Jet, ComplexPowerValueIsPrincipalBranch) {
  const complex z(0.3, -0.8);
  const Cx<J1> c(J1::variable(z.real(), 0), J1(z.imag()));
  const auto p = cpow(c, -1.3);
  const complex ref = std::pow(z, -1.3);
  EXPECT_LT(std::abs(complex(p.re.value(), p.im.value()) - ref), 1e-15);
  // d/dx z^p = p z^(p-1)
  const complex dref = -1.3 * std::pow(z, -2.3);
  EXPECT_LT(std::abs(complex(p.re.derivative({1}), p.im.derivative({1})) - dref), 1e-13);
}

TEST(ComplexType, ArithmeticMatchesStdComplex) {
  std::mt19937_64 gen(22);
  for (int trial = 0; trial < 100; ++trial) {
    const complex a = oracle::random_complex(gen), b = oracle::random_complex(gen);
    const Cx<double> ca(a), cb(b);
    EXPECT_LT(std::abs(to_complex(ca * cb) - a * b), 1e-15);
    EXPECT_LT(std::abs(to_complex(ca / cb) - a / b), 1e-12 * std::abs(a / b));
    EXPECT_LT(std::abs(to_complex(ca - cb) - (a - b)), 1e-15);
    EXPECT_EQ(abs2(ca), std::norm(a));
    EXPECT_EQ(to_complex(conj(ca)), std::conj(a));
  }
}

TEST(Wirtinger, ModulusSquared) {
  auto f = [](auto x) {
    const auto z = pair_up<typename decltype(x)::value_type>(x);
    return abs2(z[0]);
  };
  for (const auto& z : CVector{0.0, {0.3, -0.4}, {0.9, 0.1}}) {
    const auto x = to_real({z});
    const auto jet = jet_eval<2, 2>(f, std::span<const double>(x), {0, 1});
    EXPECT_NEAR(std::abs(wirtinger(jet, {{0, false}, {0, true}}) - 1.0), 0.0, 1e-15);
  }
}

TEST(Wirtinger, RealPart) {
  auto f = [](auto x) { return x[0]; };
  const std::vector<double> x{0.2, 0.7};
  const auto jet = jet_eval<2, 1>(f, std::span<const double>(x), {0, 1});
  EXPECT_EQ(wirtinger(jet, {{0, false}}), complex(0.5));
  EXPECT_EQ(wirtinger(jet, {{0, true}}), complex(0.5));
}

TEST(Wirtinger, PoincarePotentialAtHalf) {
  auto f = [](auto x) {
    using R = typename decltype(x)::value_type;
    const auto z = pair_up<R>(x);
    return -log(R(1.0) - abs2(z[0]));
  };
  const std::vector<double> x{0.5, 0.0};
  const auto jet = jet_eval<2, 2>(f, std::span<const double>(x), {0, 1});
  EXPECT_LT(std::abs(wirtinger(jet, {{0, false}, {0, true}}) - 16.0 / 9.0), 1e-14);
}

TEST(Wirtinger, HolomorphicPolynomialHasNoAntiholomorphicPart) {
  // Re and Im of p(z) = z^3 + 2 i z
  auto re = [](auto x) {
    using R = typename decltype(x)::value_type;
    const auto z = pair_up<R>(x);
    const auto p = z[0] * z[0] * z[0] + Cx<R>(R(0.0), R(2.0)) * z[0];
    return p.re;
  };
  auto im = [](auto x) {
    using R = typename decltype(x)::value_type;
    const auto z = pair_up<R>(x);
    const auto p = z[0] * z[0] * z[0] + Cx<R>(R(0.0), R(2.0)) * z[0];
    return p.im;
  };
  const complex z0(0.4, -0.3);
  const auto x = to_real({z0});
  const auto jr = jet_eval<2, 3>(re, std::span<const double>(x), {0, 1});
  const auto ji = jet_eval<2, 3>(im, std::span<const double>(x), {0, 1});
  auto d = [&](std::initializer_list<WirtingerFactor> f) {
    return wirtinger(jr, f) + complex(0.0, 1.0) * wirtinger(ji, f);
  };
  EXPECT_LT(std::abs(d({{0, true}})), 1e-12);
  EXPECT_LT(std::abs(d({{0, false}}) - (3.0 * z0 * z0 + complex(0.0, 2.0))), 1e-12);
  EXPECT_LT(std::abs(d({{0, false}, {0, false}}) - 6.0 * z0), 1e-12);
  EXPECT_LT(std::abs(d({{0, false}, {0, true}})), 1e-12);
}

TEST(Wirtinger, RejectsPairOutsideJet) {
  const J2 j(1.0);
  EXPECT_THROW(wirtinger(j, {{1, false}}), DimensionError);
}

TEST(Jet, HartogsPotentialDerivativesMatchFiniteDifferences) {
  const HartogsPotential phi(HartogsSpec(DomainSpec::disk(), 1.0));
  const std::vector<double> x{0.21, -0.13, 0.34, 0.05};
  const oracle::RealFunction f = [&](const std::vector<double>& y) { return phi(std::span<const double>(y)); };
  for (int a = 0; a < 4; ++a) {
    std::array<int, 1> dir{a};
    const auto jet = jet_eval<1, 3>(phi, std::span<const double>(x), dir);
    EXPECT_LT(std::abs(jet.derivative({1}) - oracle::fd_first(f, x, static_cast<std::size_t>(a), 1e-4)), 1e-8);
  }
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      const auto jet = jet_eval<2, 2>(phi, std::span<const double>(x), {a, b});
      const double fd = oracle::fd_second(f, x, static_cast<std::size_t>(a), static_cast<std::size_t>(b), 1e-3);
      EXPECT_LT(std::abs((a == b ? jet.derivative({2, 0}) : jet.derivative({1, 1})) - fd), 1e-8);
    }
}

TEST(RealCoordinates, RoundTrip) {
  const CVector z{{0.1, 0.2}, {-0.3, 0.4}};
  const auto x = to_real(z);
  EXPECT_EQ(x, (std::vector<double>{0.1, 0.2, -0.3, 0.4}));
  EXPECT_EQ(to_complex_vector(std::span<const double>(x)), z);
  const std::vector<double> odd{1.0, 2.0, 3.0};
  EXPECT_THROW(to_complex_vector(std::span<const double>(odd)), DimensionError);
}
