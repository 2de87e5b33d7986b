// Copyright 2026 The geophase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "geophase/device_model.hpp"
#include "geophase/errors.hpp"
#include "geophase/phase_analysis.hpp"
#include "geophase/protocols.hpp"
#include "test_support.hpp"

namespace geophase {
namespace {

using testing::field_hamiltonian;
using testing::Gen;
using testing::kPi;

BlochVector unit(const BlochVector& v) {
  const double n = v.norm();
  return {v.x / n, v.y / n, v.z / n};
}

// Great-circle arc from a to b (not antipodal), `n` intervals, endpoint
// excluded.
void append_arc(std::vector<BlochVector>& out, const BlochVector& a, const BlochVector& b,
                int n) {
  const double omega = std::acos(std::clamp(a.dot(b), -1.0, 1.0));
  for (int i = 0; i < n; ++i) {
    const double s = omega * i / n;
    const double wa = std::sin(omega - s) / std::sin(omega), wb = std::sin(s) / std::sin(omega);
    out.push_back(unit({wa * a.x + wb * b.x, wa * a.y + wb * b.y, wa * a.z + wb * b.z}));
  }
}

BlochLoop polygon(const std::vector<BlochVector>& corners, int per_arc) {
  std::vector<BlochVector> pts;
  for (std::size_t i = 0; i < corners.size(); ++i)
    append_arc(pts, corners[i], corners[(i + 1) % corners.size()], per_arc);
  pts.push_back(corners.front());
  return BlochLoop(pts);
}

// Half great circle from p to -p through direction u (u perpendicular to p).
void append_half_circle(std::vector<BlochVector>& out, const BlochVector& p,
                        const BlochVector& u, int n) {
  for (int i = 0; i < n; ++i) {
    const double s = kPi * i / n;
    out.push_back({p.x * std::cos(s) + u.x * std::sin(s), p.y * std::cos(s) + u.y * std::sin(s),
                   p.z * std::cos(s) + u.z * std::sin(s)});
  }
}

std::vector<BlochVector> latitude_circle(double lat, int n) {
  std::vector<BlochVector> pts;
  for (int i = 0; i <= n; ++i) {
    const double a = 2 * kPi * i / n;
    pts.push_back({std::cos(lat) * std::cos(a), std::cos(lat) * std::sin(a), std::sin(lat)});
  }
  pts.back() = pts.front();
  return pts;
}

std::vector<HamiltonianSegment> protocol_segments(double delta) {
  const DeviceParams p{};
  return schedule_hamiltonians(p, build_single_qubit_schedule(p, SingleQubitPlan{delta}));
}

// ---------- wrap ----------

TEST(WrapPhase, RangeIsHalfOpen) {
  EXPECT_DOUBLE_EQ(wrap_phase(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_phase(-kPi), kPi);
  EXPECT_NEAR(wrap_phase(3 * kPi / 2), -kPi / 2, 1e-15);
  EXPECT_NEAR(wrap_phase(-7.0), -7.0 + 2 * kPi, 1e-15);
}

// ---------- dynamic / total / geometric ----------

TEST(DynamicPhase, StationaryEigenstate) {
  const double e = 1.3, t = 2.2;
  // |up> is the eigenstate of -1/2 w sigma_z with energy -w/2.
  const std::vector<HamiltonianSegment> s{{Complex(-0.5 * 2 * e) * pauli::z(), t}};
  const Trajectory tr = evolve_schedule(s, StateVector::up(), 101);
  EXPECT_NEAR(dynamic_phase(tr), e * t, 1e-12);
  EXPECT_NEAR(total_phase(tr), wrap_phase(e * t), 1e-12);
  const PhaseReport r = geometric_phase(tr);
  EXPECT_NEAR(r.geometric_phase, 0.0, 1e-8);
}

TEST(DynamicPhase, PerpendicularStateAccruesNothing) {
  const std::vector<HamiltonianSegment> s{{field_hamiltonian({0, 0, 3}), 0.77}};
  StateVector plus_x = StateVector::normalized(std::vector<Complex>{1.0, 1.0});
  EXPECT_NEAR(dynamic_phase(evolve_schedule(s, plus_x)), 0.0, 1e-14);
}

TEST(DynamicPhase, NeedsTwoSamples) {
  const Trajectory one({{0.0, StateVector::up(), 0}}, {pauli::x()});
  EXPECT_THROW(dynamic_phase(one), Error);
}

TEST(TotalPhase, ZeroHamiltonian) {
  const std::vector<HamiltonianSegment> s{{Operator::zero(2), 9.0}};
  EXPECT_NEAR(total_phase(evolve_schedule(s, StateVector::plus_y(), 11)), 0.0, 1e-15);
}

TEST(TotalPhase, NonCyclicCarriesTheDefect) {
  const std::vector<HamiltonianSegment> s{{field_hamiltonian({1, 0, 0}), kPi / 2}};
  const Trajectory tr = evolve_schedule(s, StateVector::up());
  try {
    total_phase(tr);
    FAIL() << "expected NonCyclicTrajectory";
  } catch (const NonCyclicTrajectory& e) {
    EXPECT_STREQ(e.what(), "non-cyclic trajectory");
    EXPECT_NEAR(e.defect(), 1.0 - std::sqrt(0.5), 1e-12);
  }
  EXPECT_THROW(geometric_phase(tr), NonCyclicTrajectory);
}

TEST(GeometricPhase, RejectsCoarseSampling) {
  const std::vector<HamiltonianSegment> s{{field_hamiltonian({0, 0, 2 * kPi}), 1.0}};
  StateVector plus_x = StateVector::normalized(std::vector<Complex>{1.0, 1.0});
  EXPECT_THROW(geometric_phase(evolve_schedule(s, plus_x, 5)), ContractViolation);
}

TEST(GeometricPhase, ProtocolEigenstates) {
  // |+y> picks up pi - gamma, |-y> pi + gamma; cross-checked against the area.
  for (double delta : {0.0, 0.01, 0.04, 0.1}) {
    const double gamma = 2 * std::atan(50 * delta / 2);
    const auto segs = protocol_segments(delta);
    const Trajectory plus = evolve_schedule(segs, StateVector::plus_y());
    const Trajectory minus = evolve_schedule(segs, StateVector::minus_y());
    const PhaseReport rp = geometric_phase(plus), rm = geometric_phase(minus);
    EXPECT_NEAR(wrap_phase(rp.geometric_phase_wrapped - (kPi - gamma)), 0.0, 1e-8) << delta;
    EXPECT_NEAR(wrap_phase(rm.geometric_phase_wrapped - (kPi + gamma)), 0.0, 1e-8) << delta;
    EXPECT_NEAR(std::abs(rp.dynamic_phase), 0.0, 1e-8);
    EXPECT_NEAR(rp.total_phase, rp.geometric_phase_wrapped, 1e-8);
    const double from_area = wrap_phase(-kLoopOrientation * solid_angle(bloch_loop(plus)) / 2);
    EXPECT_NEAR(wrap_phase(from_area - rp.geometric_phase_wrapped), 0.0, 1e-6);
  }
}

TEST(GeometricPhase, ZeroDynamicPhaseAlongRk4Trajectories) {
  for (double delta : {0.005, 0.04, 0.15}) {
    const auto segs = protocol_segments(delta);
    for (const auto& s : {StateVector::plus_y(), StateVector::minus_y()}) {
      const Trajectory tr =
          evolve_schedule(segs, s, kDefaultSamplesPerSegment, EvolutionMethod::rk4);
      EXPECT_LT(std::abs(dynamic_phase(tr)), 1e-8);
    }
  }
}

// ---------- solid angle ----------

TEST(SolidAngle, Octant) {
  const BlochLoop loop = polygon({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 100);
  EXPECT_NEAR(solid_angle(loop), kPi / 2, 1e-6);
}

TEST(SolidAngle, Equator) {
  const BlochLoop loop(latitude_circle(0.0, 400));
  EXPECT_NEAR(std::abs(solid_angle(loop)), 2 * kPi, 1e-6);
  EXPECT_NEAR(solid_angle(loop), 2 * kPi, 1e-6);  // counterclockwise about +z
}

TEST(SolidAngle, Lune) {
  for (double eta : {0.05, kPi / 8, 0.6, 1.2}) {
    const BlochVector p{0, 1, 0};
    const BlochVector u1{std::cos(eta), 0, std::sin(eta)};
    const BlochVector u2{std::cos(eta), 0, -std::sin(eta)};
    std::vector<BlochVector> pts;
    append_half_circle(pts, p, u1, 500);
    append_half_circle(pts, {0, -1, 0}, u2, 500);
    pts.push_back(p);
    EXPECT_NEAR(std::abs(solid_angle(BlochLoop(pts))), 4 * eta, 1e-6) << eta;
  }
}

TEST(SolidAngle, SmallCircle) {
  const double lat = 0.4;
  EXPECT_NEAR(solid_angle(BlochLoop(latitude_circle(lat, 4000))), 2 * kPi * (1 - std::sin(lat)),
              1e-5);
}

TEST(SolidAngle, AntipodalStepIsAmbiguous) {
  const BlochLoop loop({{0, 0, 1}, {0, 0, -1}, {1, 0, 0}, {0, 0, 1}});
  EXPECT_THROW(
      {
        try {
          solid_angle(loop);
        } catch (const Error& e) {
          EXPECT_STREQ(e.what(), "ambiguous geodesic");
          throw;
        }
      },
      Error);
}

TEST(BlochLoop, Validation) {
  EXPECT_THROW(BlochLoop({{0, 0, 1}, {1, 0, 0}, {0, 0, 1}}), ContractViolation);
  EXPECT_THROW(BlochLoop({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 2}}), ContractViolation);
  EXPECT_THROW(BlochLoop({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {1, 0, 0}}), ContractViolation);
}

TEST(Properties, ReversalNegatesSolidAngle) {
  Gen g(31);
  for (int k = 0; k < 100; ++k) {
    std::vector<BlochVector> corners;
    const int n = g.integer(3, 6);
    for (int i = 0; i < n; ++i) corners.push_back(unit({g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)}));
    const BlochLoop loop = polygon(corners, 30);
    EXPECT_NEAR(solid_angle(loop.reversed()), -solid_angle(loop), 1e-12);
  }
}

TEST(Properties, RefinementStability) {
  Gen g(32);
  for (int k = 0; k < 50; ++k) {
    std::vector<BlochVector> corners;
    for (int i = 0; i < 4; ++i)
      corners.push_back(unit({g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)}));
    // >= 60 points per arc keeps consecutive state overlaps above 0.999.
    EXPECT_NEAR(solid_angle(polygon(corners, 60)), solid_angle(polygon(corners, 120)), 1e-8);
  }
  for (double delta : {0.01, 0.04, 0.2}) {
    const auto segs = protocol_segments(delta);
    const double coarse = solid_angle(bloch_loop(evolve_schedule(segs, StateVector::plus_y(), 1001)));
    const double fine = solid_angle(bloch_loop(evolve_schedule(segs, StateVector::plus_y(), 2001)));
    EXPECT_NEAR(coarse, fine, 1e-8);
  }
}

// Multiplies each state by e^{i phi(t)} and shifts each interval's generator
// by -phi'(t) so the trajectory is still a solution.
Trajectory regauge(const Trajectory& tr, const std::function<double(double)>& phi) {
  std::vector<TrajectorySample> samples;
  std::vector<Operator> hs{tr.hamiltonian(0)};
  samples.push_back({0.0, tr[0].state.scaled(std::polar(1.0, phi(0.0))), 0});
  for (std::size_t i = 1; i < tr.size(); ++i) {
    const double dt = tr[i].t - tr[i - 1].t;
    const double rate = (phi(tr[i].t) - phi(tr[i - 1].t)) / dt;
    hs.push_back(tr.hamiltonian(i) - Complex(rate) * Operator::identity(2));
    samples.push_back({tr[i].t, tr[i].state.scaled(std::polar(1.0, phi(tr[i].t))), i});
  }
  return Trajectory(std::move(samples), std::move(hs));
}

TEST(Properties, GaugeInvariance) {
  Gen g(33);
  for (int k = 0; k < 20; ++k) {
    const auto segs = protocol_segments(g.uniform(0.0, 0.2));
    const Trajectory tr = evolve_schedule(segs, k % 2 ? StateVector::plus_y() : StateVector::minus_y());
    const double T = tr.back().t;
    double a[3], w[3];
    for (int m = 0; m < 3; ++m) a[m] = g.uniform(-1, 1), w[m] = g.uniform(-1, 1);
    const int winding = g.integer(-2, 2);
    auto phi = [&](double t) {
      double v = 2 * kPi * winding * t / T;
      for (int m = 0; m < 3; ++m)
        v += a[m] * std::sin(2 * kPi * (m + 1) * t / T) + w[m] * (1 - std::cos(2 * kPi * (m + 1) * t / T));
      return v;
    };
    const PhaseReport before = geometric_phase(tr);
    const PhaseReport after = geometric_phase(regauge(tr, phi));
    EXPECT_NEAR(after.dynamic_phase - before.dynamic_phase, 2 * kPi * winding, 1e-8);
    EXPECT_NEAR(wrap_phase(after.geometric_phase_wrapped - before.geometric_phase_wrapped), 0.0,
                1e-8);
    if (winding == 0) {
      EXPECT_NEAR(after.geometric_phase, before.geometric_phase, 1e-8);
    }
  }
}

TEST(Properties, TotalIsDynamicPlusGeometric) {
  Gen g(34);
  for (int k = 0; k < 30; ++k) {
    const auto segs = protocol_segments(g.uniform(0.0, 0.5));
    for (const auto& s : {StateVector::plus_y(), StateVector::minus_y()}) {
      const PhaseReport r = geometric_phase(evolve_schedule(segs, s));
      EXPECT_NEAR(wrap_phase(r.total_phase - r.dynamic_phase - r.geometric_phase), 0.0, 1e-6);
      EXPECT_LE(r.cyclicity_defect, kCyclicityTolerance);
    }
  }
}

// ---------- geodesic deviation ----------

TEST(GeodesicDeviation, Examples) {
  EXPECT_NEAR(geodesic_deviation(latitude_circle(0.0, 100)), 0.0, 1e-10);
  EXPECT_NEAR(geodesic_deviation(latitude_circle(kPi / 4, 100)), std::sin(kPi / 4), 1e-6);
}

TEST(GeodesicDeviation, EigenstatePathsAreGreatCircles) {
  const auto segs = protocol_segments(0.04);
  const Trajectory tr =
      evolve_schedule(segs, StateVector::plus_y(), kDefaultSamplesPerSegment, EvolutionMethod::rk4);
  std::vector<BlochVector> first, second;
  for (const auto& s : tr.samples())
    (s.t <= tr.back().t / 2 ? first : second).push_back(bloch_from_state(s.state));
  EXPECT_LT(geodesic_deviation(first), 1e-6);
  EXPECT_LT(geodesic_deviation(second), 1e-6);
  // A generic state travels on small circles instead.
  const StateVector generic = StateVector::normalized(std::vector<Complex>{0.9, {0.1, 0.3}});
  std::vector<BlochVector> g1;
  const Trajectory gt = evolve_schedule(segs, generic);
  for (const auto& s : gt.samples())
    if (s.segment == 0) g1.push_back(bloch_from_state(s.state));
  EXPECT_GT(geodesic_deviation(g1), 1e-2);
}

// ---------- consistency ----------

TEST(PhaseConsistency, ProtocolAtEighthTurnTilt) {
  const double delta = 2.0 / 50 * std::tan(kPi / 8);  // gamma = pi/4
  const auto segs = protocol_segments(delta);
  const PhaseConsistency c = phase_consistency(evolve_schedule(segs, StateVector::plus_y()));
  EXPECT_NEAR(c.geo_from_phase, 3 * kPi / 4, 1e-8);
  EXPECT_NEAR(c.geo_from_area, 3 * kPi / 4, 1e-6);
  EXPECT_LT(c.mismatch, 1e-6);
  const PhaseConsistency m = phase_consistency(evolve_schedule(segs, StateVector::minus_y()));
  EXPECT_NEAR(m.geo_from_phase, -3 * kPi / 4, 1e-8);
  EXPECT_LT(m.mismatch, 1e-6);
}

TEST(PhaseConsistency, FullPrecessionPeriod) {
  // Fixes the orientation constant: a perpendicular state precessing once
  // about z gains geometric phase pi and sweeps a hemisphere.
  const double w = 2.0;
  const std::vector<HamiltonianSegment> s{{field_hamiltonian({0, 0, w}), 2 * kPi / w}};
  const StateVector plus_x = StateVector::normalized(std::vector<Complex>{1.0, 1.0});
  const Trajectory tr = evolve_schedule(s, plus_x, 2001);
  const PhaseReport r = geometric_phase(tr);
  EXPECT_NEAR(r.geometric_phase_wrapped, kPi, 1e-8);
  EXPECT_NEAR(std::abs(solid_angle(bloch_loop(tr))), 2 * kPi, 1e-6);
  EXPECT_LT(phase_consistency(tr).mismatch, 1e-6);

  // An off-equator state: Omega/2 = pi (1 - cos theta) fixes the sign.
  const double theta = 1.0;
  const StateVector tilted = StateVector::normalized(
      std::vector<Complex>{std::cos(theta / 2), std::sin(theta / 2)});
  const Trajectory t2 = evolve_schedule(s, tilted, 2001);
  const double omega = solid_angle(bloch_loop(t2));
  EXPECT_NEAR(std::abs(omega), 2 * kPi * (1 - std::cos(theta)), 1e-5);
  EXPECT_NEAR(wrap_phase(geometric_phase(t2).geometric_phase_wrapped + kLoopOrientation * omega / 2),
              0.0, 1e-5);
}

TEST(PhaseConsistency, DegenerateProtocol) {
  const PhaseConsistency c =
      phase_consistency(evolve_schedule(protocol_segments(0.0), StateVector::plus_y()));
  EXPECT_NEAR(std::abs(c.geo_from_phase), kPi, 1e-8);
  EXPECT_LT(c.mismatch, 1e-6);
}

}  // namespace
}  // namespace geophase
