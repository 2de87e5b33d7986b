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

#pragma once

// Total / dynamic / geometric (Aharonov-Anandan) phase of cyclic evolutions,
// and the geometric phase recomputed from the enclosed Bloch-sphere area.
//
// Orientation: solid_angle is positive for loops traversed counterclockwise
// when viewed from outside the sphere, around the enclosed region (right-hand
// rule about its outward normal). With that orientation a spin-1/2 cyclic
// state acquires the geometric phase -Omega/2, i.e. kLoopOrientation = +1.

#include <vector>

#include "geophase/quantum_core.hpp"

namespace geophase {

inline constexpr double kLoopOrientation = 1.0;
inline constexpr double kCyclicityTolerance = 1e-9;
// Minimum |<psi_i|psi_i+1>| between consecutive trajectory samples.
inline constexpr double kMinStepOverlap = 0.99;

// Wraps into (-pi, pi].
double wrap_phase(double phase);

struct PhaseReport {
  double total_phase = 0;             // (-pi, pi]
  double dynamic_phase = 0;           // unwrapped
  double geometric_phase = 0;         // total - dynamic, no 2 pi reduction
  double geometric_phase_wrapped = 0; // (-pi, pi]
  double cyclicity_defect = 0;        // 1 - |<psi(0)|psi(T)>|
};

class BlochLoop {
 public:
  // Requires >= 4 unit vectors (to 1e-8) with first == last (to 1e-6).
  explicit BlochLoop(std::vector<BlochVector> points);

  const std::vector<BlochVector>& points() const noexcept { return points_; }
  BlochLoop reversed() const;

 private:
  std::vector<BlochVector> points_;
};

// -int <psi|H|psi> dt, composite trapezoid on the sample grid.
double dynamic_phase(const Trajectory& traj);

// arg <psi(0)|psi(T)>; throws NonCyclicTrajectory when the end state is not
// the initial ray to within kCyclicityTolerance.
double total_phase(const Trajectory& traj);

// Throws as total_phase, and ContractViolation when consecutive samples
// overlap by kMinStepOverlap or less.
PhaseReport geometric_phase(const Trajectory& traj);

// Bloch images of all samples, closed onto the first point. Requires a
// single-qubit trajectory.
BlochLoop bloch_loop(const Trajectory& traj);

// Signed solid angle in (-4 pi, 4 pi): sum of signed geodesic-triangle
// excesses fanned from a reference point chosen away from every antipode of
// the loop.
double solid_angle(const BlochLoop& loop);

// Largest distance of any point from the best-fit plane through the origin.
double geodesic_deviation(const std::vector<BlochVector>& points);

struct PhaseConsistency {
  double geo_from_phase = 0;  // wrapped geometric phase of the trajectory
  double geo_from_area = 0;   // wrap(-kLoopOrientation * Omega / 2)
  double mismatch = 0;        // |wrap(difference)|
};

PhaseConsistency phase_consistency(const Trajectory& traj);

}  // namespace geophase
