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

#include "geophase/phase_analysis.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "geophase/errors.hpp"

namespace geophase {

double wrap_phase(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(phase, two_pi);  // [-pi, pi]
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

BlochLoop::BlochLoop(std::vector<BlochVector> points) : points_(std::move(points)) {
  if (points_.size() < 4) throw ContractViolation("a Bloch loop needs >= 4 points");
  for (const auto& p : points_) {
    if (std::abs(p.norm() - 1.0) > 1e-8)
      throw ContractViolation("Bloch loop points must be unit vectors");
  }
  const BlochVector& a = points_.front();
  const BlochVector& b = points_.back();
  const double gap = std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                               (a.z - b.z) * (a.z - b.z));
  if (gap > 1e-6) throw ContractViolation("Bloch loop is not closed");
}

BlochLoop BlochLoop::reversed() const {
  return BlochLoop(std::vector<BlochVector>(points_.rbegin(), points_.rend()));
}

double dynamic_phase(const Trajectory& traj) {
  if (traj.size() < 2) throw Error("dynamic phase needs at least 2 samples");
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const Operator& h = traj.hamiltonian(i + 1);
    const double e0 = traj[i].state.expectation(h).real();
    const double e1 = traj[i + 1].state.expectation(h).real();
    integral += 0.5 * (traj[i + 1].t - traj[i].t) * (e0 + e1);
  }
  return -integral;
}

namespace {

double cyclic_overlap_phase(const Trajectory& traj, double* defect) {
  const Complex ov = traj.front().state.inner(traj.back().state);
  const double d = 1.0 - std::abs(ov);
  if (defect) *defect = std::max(d, 0.0);
  if (d > kCyclicityTolerance) throw NonCyclicTrajectory(d);
  return wrap_phase(std::arg(ov));
}

}  // namespace

double total_phase(const Trajectory& traj) { return cyclic_overlap_phase(traj, nullptr); }

PhaseReport geometric_phase(const Trajectory& traj) {
  if (traj.size() < 2) throw Error("geometric phase needs at least 2 samples");
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    if (std::abs(traj[i].state.inner(traj[i + 1].state)) <= kMinStepOverlap)
      throw ContractViolation("trajectory sampled too coarsely for phase tracking");
  }
  PhaseReport r;
  r.total_phase = cyclic_overlap_phase(traj, &r.cyclicity_defect);
  r.dynamic_phase = dynamic_phase(traj);
  r.geometric_phase = r.total_phase - r.dynamic_phase;
  r.geometric_phase_wrapped = wrap_phase(r.geometric_phase);
  return r;
}

BlochLoop bloch_loop(const Trajectory& traj) {
  std::vector<BlochVector> pts;
  pts.reserve(traj.size() + 1);
  for (const auto& s : traj.samples()) {
    BlochVector b = bloch_from_state(s.state);
    const double n = b.norm();
    pts.push_back({b.x / n, b.y / n, b.z / n});
  }
  pts.push_back(pts.front());
  return BlochLoop(std::move(pts));
}

namespace {

// Signed excess of the geodesic triangle (r, a, b) (Van Oosterom-Strackee).
double triangle_excess(const BlochVector& r, const BlochVector& a, const BlochVector& b) {
  const double num = r.dot(a.cross(b));
  const double den = 1.0 + r.dot(a) + a.dot(b) + b.dot(r);
  return 2.0 * std::atan2(num, den);
}

BlochVector pick_reference(const std::vector<BlochVector>& pts) {
  // Candidates: the normalized centroid direction (both signs) and the six
  // axis directions. Keep the one whose antipode stays farthest from the loop.
  std::vector<BlochVector> cands;
  BlochVector c{};
  for (const auto& p : pts) {
    c.x += p.x;
    c.y += p.y;
    c.z += p.z;
  }
  const double cn = c.norm();
  if (cn > 1e-6) {
    cands.push_back({c.x / cn, c.y / cn, c.z / cn});
    cands.push_back({-c.x / cn, -c.y / cn, -c.z / cn});
  }
  const std::array<BlochVector, 6> axes{{{0, 0, 1}, {0, 0, -1}, {1, 0, 0},
                                         {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}}};
  cands.insert(cands.end(), axes.begin(), axes.end());
  BlochVector best = cands.front();
  double best_score = -std::numeric_limits<double>::infinity();
  for (const auto& r : cands) {
    double score = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) score = std::min(score, 1.0 + r.dot(p));
    if (score > best_score) {
      best_score = score;
      best = r;
    }
  }
  return best;
}

}  // namespace

double solid_angle(const BlochLoop& loop) {
  const auto& pts = loop.points();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    // |<v_i|v_i+1>|^2 of the spinor lifts
    if (0.5 * (1.0 + pts[i].dot(pts[i + 1])) < 1e-12) throw Error("ambiguous geodesic");
  }
  const BlochVector ref = pick_reference(pts);
  double omega = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    omega += triangle_excess(ref, pts[i], pts[i + 1]);
  return omega;
}

double geodesic_deviation(const std::vector<BlochVector>& points) {
  if (points.size() < 3) throw ContractViolation("geodesic_deviation needs >= 3 points");
  Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
  for (const auto& p : points) {
    const Eigen::Vector3d v(p.x, p.y, p.z);
    scatter += v * v.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(scatter);
  const Eigen::Vector3d n = eig.eigenvectors().col(0);  // smallest eigenvalue
  double worst = 0.0;
  for (const auto& p : points)
    worst = std::max(worst, std::abs(n.x() * p.x + n.y() * p.y + n.z() * p.z));
  return worst;
}

PhaseConsistency phase_consistency(const Trajectory& traj) {
  const PhaseReport r = geometric_phase(traj);
  const double omega = solid_angle(bloch_loop(traj));
  PhaseConsistency c;
  c.geo_from_phase = r.geometric_phase_wrapped;
  c.geo_from_area = wrap_phase(-kLoopOrientation * omega / 2.0);
  c.mismatch = std::abs(wrap_phase(c.geo_from_phase - c.geo_from_area));
  return c;
}

}  // namespace geophase
