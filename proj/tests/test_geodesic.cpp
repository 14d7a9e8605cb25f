#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "hartogs/geodesic.hpp"
#include "hartogs/hartogs.hpp"
#include "hartogs/lift.hpp"
#include "oracles.hpp"

using namespace hartogs;

TEST(Geodesic, FiberDirectionStaysInFiber) {
  for (const auto& base : {DomainSpec::type_i(2, 2), DomainSpec::type_iv(5), DomainSpec::polydisk(2)}) {
    const HartogsPotential phi(HartogsSpec(base, 1.3));
    const auto n = static_cast<std::size_t>(base.dim()) + 1;
    CVector v0(n, 0.0);
    v0.back() = complex(0.6, 0.8);
    const auto trace = geodesic_ivp(phi, CVector(n, 0.0), v0, 1.0);
    EXPECT_EQ(trace.status, GeodesicStatus::Completed);
    double worst = 0.0;
    for (const auto& p : trace.positions)
      for (std::size_t i = 0; i + 1 < n; ++i) worst = std::max(worst, std::abs(p[i]));
    EXPECT_LT(worst, 1e-10) << base.name();
  }
}

TEST(Geodesic, RadialBallGeodesicFollowsTanh) {
  // M over the disk with exponent 1 is the unit ball of C^2.
  const HartogsPotential phi(HartogsSpec(DomainSpec::disk(), 1.0));
  const CVector xi{complex(0.6, 0.0), complex(0.0, 0.8)};
  const auto trace = geodesic_ivp(phi, {0.0, 0.0}, xi, 1.5);
  ASSERT_EQ(trace.status, GeodesicStatus::Completed);
  double worst = 0.0;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const double r = std::tanh(trace.times[k]);
    worst = std::max(worst, oracle::max_diff(trace.positions[k], {r * xi[0], r * xi[1]}));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(Geodesic, EnergyIsConserved) {
  std::mt19937_64 gen(61);
  for (const auto& base : {DomainSpec::type_i(2, 2), DomainSpec::type_iii(2), DomainSpec::type_iv(5)}) {
    const HartogsSpec spec(base, 0.9);
    const HartogsPotential phi(spec);
    const CVector p0 = h_sample(spec, 0.5, 7).coords();
    CVector v0(p0.size());
    for (auto& c : v0) c = oracle::random_complex(gen, 0.5);
    const auto trace = geodesic_ivp(phi, p0, v0, 1.0);
    EXPECT_LT(trace.energy_drift(), 1e-8) << base.name();
    EXPECT_EQ(trace.times.back(), 1.0);
  }
}

TEST(Geodesic, StopsBeforeTheBoundary) {
  const HartogsSpec spec(DomainSpec::disk(), 1.0);
  const HartogsPotential phi(spec);
  const auto trace = geodesic_ivp(phi, {0.0, 0.0}, {0.0, 1.0}, 100.0);
  EXPECT_EQ(trace.status, GeodesicStatus::BoundaryReached);
  EXPECT_LT(trace.times.back(), 100.0);
  for (const auto& p : trace.positions) EXPECT_TRUE(h_contains(spec, p, 0.0));
  EXPECT_GT(std::abs(trace.positions.back()[1]), 0.999);
}

TEST(Geodesic, AutomorphismMapsGeodesicsToGeodesics) {
  const double mu = 1.8;
  const HartogsPotential phi(HartogsSpec(DomainSpec::polydisk(2), mu));
  const auto f = lift_automorphism_polydisk({complex(0.2, -0.3), complex(0.1, 0.4)}, {0.3, -0.6}, mu);
  const CVector p0{complex(0.1, 0.1), complex(-0.2, 0.0), complex(0.1, -0.1)};
  const CVector v0{complex(0.3, 0.1), complex(0.0, 0.4), complex(0.2, 0.2)};
  const auto direct = geodesic_ivp(phi, p0, v0, 1.0);
  const CMatrix jac = f.jacobian(p0);
  const auto moved = geodesic_ivp(phi, f(p0), jac * v0, 1.0);
  EXPECT_LT(oracle::max_diff(f(direct.positions.back()), moved.positions.back()), 1e-7);
  EXPECT_NEAR(direct.energies.front(), moved.energies.front(), 1e-12);
}

TEST(Geodesic, ArgumentChecks) {
  const HartogsPotential phi(HartogsSpec(DomainSpec::disk(), 1.0));
  EXPECT_THROW(geodesic_ivp(phi, {0.0, 0.0}, {0.0, 0.0}, 1.0), InvalidArgument);
  EXPECT_THROW(geodesic_ivp(phi, {0.0, 0.0}, {1.0, 0.0}, 0.0), InvalidArgument);
  EXPECT_THROW(geodesic_ivp(phi, {0.0}, {1.0}, 1.0), DimensionError);
  EXPECT_THROW(geodesic_ivp(phi, {0.0, 1.0}, {1.0, 0.0}, 1.0), DomainError);
}

TEST(GeodesicTrace, CsvLayout) {
  const HartogsPotential phi(HartogsSpec(DomainSpec::disk(), 1.0));
  const auto trace = geodesic_ivp(phi, {0.0, 0.0}, {0.5, 0.0}, 0.1);
  std::ostringstream os;
  trace.write_csv(os);
  std::istringstream in(os.str());
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(header, "t,re_z1,im_z1,re_w,im_w,energy");
  EXPECT_EQ(first, "0,0,0,0,0,0.25");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows + 1, trace.size());
}

TEST(GeodesicTrace, DeterministicAcrossRuns) {
  const HartogsSpec spec(DomainSpec::type_ii(4), 1.2);
  const HartogsPotential phi(spec);
  const CVector p0 = h_sample(spec, 0.5, 3).coords();
  CVector v0(p0.size(), 0.0);
  v0[2] = 0.4;
  v0.back() = complex(0.0, 0.3);
  std::ostringstream a, b;
  geodesic_ivp(phi, p0, v0, 0.5).write_csv(a);
  geodesic_ivp(phi, p0, v0, 0.5).write_csv(b);
  EXPECT_EQ(a.str(), b.str());
}
