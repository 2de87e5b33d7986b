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

#include <boost/math/tools/minima.hpp>

#include <array>
#include <cmath>
#include <numbers>

#include "geophase/errors.hpp"
#include "geophase/protocols.hpp"

namespace geophase {

namespace {

constexpr int kGridPoints = 721;

// Sign of phi1 and phi2 in the diagonal of e^{i phi1 Z} x e^{i phi2 Z}.
constexpr std::array<int, 4> kSign1{1, 1, -1, -1};
constexpr std::array<int, 4> kSign2{1, -1, 1, -1};

struct TraceObjective {
  // tr(C^dag D u) = sum_k D_kk (u C^dag)_kk
  std::array<Complex, 4> w;

  double operator()(double phi1, double phi2) const {
    Complex acc = 0.0;
    for (int k = 0; k < 4; ++k)
      acc += std::polar(1.0, kSign1[k] * phi1 + kSign2[k] * phi2) * w[k];
    return std::abs(acc) / 4.0;
  }
};

}  // namespace

double cnot_fidelity(const Operator& u) {
  if (u.dim() != 4) throw ContractViolation("cnot_fidelity expects a two-qubit gate");
  if (!u.is_unitary(1e-9)) throw ContractViolation("cnot_fidelity expects a unitary");
  const Eigen::MatrixXcd uc = u.matrix() * cnot_target().matrix().adjoint();
  TraceObjective f{{uc(0, 0), uc(1, 1), uc(2, 2), uc(3, 3)}};

  // phi -> phi + pi only flips the global sign, so [0, pi] covers everything.
  const double step = std::numbers::pi / (kGridPoints - 1);
  double best = -1.0, p1 = 0.0, p2 = 0.0;
  for (int i = 0; i < kGridPoints; ++i) {
    for (int j = 0; j < kGridPoints; ++j) {
      const double v = f(i * step, j * step);
      if (v > best) {
        best = v;
        p1 = i * step;
        p2 = j * step;
      }
    }
  }

  // Coordinate-wise Brent refinement around the best grid point.
  constexpr int kBits = 40;
  for (int iter = 0; iter < 50; ++iter) {
    const double before = best;
    auto r1 = boost::math::tools::brent_find_minima(
        [&](double x) { return -f(x, p2); }, p1 - step, p1 + step, kBits);
    if (-r1.second > best) {
      best = -r1.second;
      p1 = r1.first;
    }
    auto r2 = boost::math::tools::brent_find_minima(
        [&](double y) { return -f(p1, y); }, p2 - step, p2 + step, kBits);
    if (-r2.second > best) {
      best = -r2.second;
      p2 = r2.first;
    }
    if (best - before < 1e-14) break;
  }
  return std::min(best, 1.0);
}

LocalInvariants local_invariants(const Operator& u) {
  if (u.dim() != 4) throw ContractViolation("local_invariants expects a two-qubit gate");
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  Eigen::Matrix4cd q;
  q << r, 0, 0, i * r,
       0, i * r, r, 0,
       0, i * r, -r, 0,
       r, 0, 0, -i * r;
  const Eigen::Matrix4cd ub = q.adjoint() * u.matrix() * q;
  const Eigen::Matrix4cd m = ub.transpose() * ub;
  const Complex det = u.matrix().determinant();
  const Complex tr = m.trace();
  const Complex tr2 = (m * m).trace();
  return {tr * tr / (16.0 * det), ((tr * tr - tr2) / (4.0 * det)).real()};
}

}  // namespace geophase
