// Copyright 2026 The gkpec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gkpec/symplectic.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "gkpec/quadrature.h"

namespace gkpec {

namespace {

constexpr double kIntegralTol = 1e-9;

int q_index(int mode) { return 2 * mode; }
int p_index(int mode) { return 2 * mode + 1; }

void check_mode(int n_modes, int mode, const char* what) {
  if (mode < 0 || mode >= n_modes) {
    throw std::invalid_argument(std::string(what) + ": mode index out of range");
  }
}

void check_pair(int n_modes, int j, int k, const char* what) {
  check_mode(n_modes, j, what);
  check_mode(n_modes, k, what);
  if (j == k) {
    throw std::invalid_argument(std::string(what) + ": modes must differ");
  }
}

std::int64_t floor_div(std::int64_t x, std::int64_t d) {
  std::int64_t q = x / d;
  if ((x % d != 0) && ((x < 0) != (d < 0))) --q;
  return q;
}

void axpy_row(std::vector<std::int64_t>& dst, std::int64_t factor,
              const std::vector<std::int64_t>& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= factor * src[i];
}

std::string format_vector(const Eigen::VectorXd& c) {
  std::ostringstream out;
  out << "(";
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (i) out << ", ";
    double v = c[i];
    if (v == 0.0) v = 0.0;  // no "-0"
    out << std::setprecision(17) << v;
  }
  out << ")";
  return out.str();
}

}  // namespace

SymplecticMap::SymplecticMap(int n_modes, Eigen::MatrixXd matrix)
    : n_modes_(n_modes), matrix_(std::move(matrix)) {
  if (n_modes < 1 || matrix_.rows() != 2 * n_modes || matrix_.cols() != 2 * n_modes) {
    throw std::invalid_argument("SymplecticMap: matrix must be 2n x 2n with n >= 1");
  }
}

SymplecticMap SymplecticMap::Identity(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("SymplecticMap: n_modes must be >= 1");
  return SymplecticMap(n_modes, Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int i = 0; i < n_modes; ++i) {
    omega(q_index(i), p_index(i)) = 1.0;
    omega(p_index(i), q_index(i)) = -1.0;
  }
  return omega;
}

double SymplecticMap::symplectic_defect() const {
  const Eigen::MatrixXd omega = symplectic_form(n_modes_);
  return (matrix_ * omega * matrix_.transpose() - omega).cwiseAbs().maxCoeff();
}

SymplecticMap gate_squeeze(int n_modes, int mode, double r) {
  check_mode(n_modes, mode, "gate_squeeze");
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("gate_squeeze: r must be finite and > 0");
  }
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  s(q_index(mode), q_index(mode)) = 1.0 / r;
  s(p_index(mode), p_index(mode)) = r;
  return SymplecticMap(n_modes, std::move(s));
}

SymplecticMap gate_sum(int n_modes, int control, int target) {
  check_pair(n_modes, control, target, "gate_sum");
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  s(q_index(target), q_index(control)) = 1.0;
  s(p_index(control), p_index(target)) = -1.0;
  return SymplecticMap(n_modes, std::move(s));
}

SymplecticMap gate_sum_inv(int n_modes, int control, int target) {
  check_pair(n_modes, control, target, "gate_sum_inv");
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  s(q_index(target), q_index(control)) = -1.0;
  s(p_index(control), p_index(target)) = 1.0;
  return SymplecticMap(n_modes, std::move(s));
}

SymplecticMap gate_bs50(int n_modes, int j, int k) {
  check_pair(n_modes, j, k, "gate_bs50");
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  const double h = 1.0 / kSqrt2;
  for (int quad = 0; quad < 2; ++quad) {
    const int xj = 2 * j + quad;
    const int xk = 2 * k + quad;
    s(xj, xj) = h;
    s(xj, xk) = -h;
    s(xk, xj) = h;
    s(xk, xk) = h;
  }
  return SymplecticMap(n_modes, std::move(s));
}

SymplecticMap compose(int n_modes, std::span<const SymplecticMap> circuit) {
  Eigen::MatrixXd total = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  for (const SymplecticMap& gate : circuit) {
    if (gate.n_modes() != n_modes) {
      throw std::invalid_argument("compose: mode-count mismatch");
    }
    total = gate.matrix() * total;
  }
  return SymplecticMap(n_modes, std::move(total));
}

SymplecticMap compose(std::span<const SymplecticMap> circuit) {
  if (circuit.empty()) {
    throw std::invalid_argument("compose: empty circuit needs an explicit mode count");
  }
  return compose(circuit.front().n_modes(), circuit);
}

Eigen::VectorXd propagate_displacement(const SymplecticMap& map,
                                       const Eigen::VectorXd& shifts) {
  if (shifts.size() != map.matrix().cols()) {
    throw std::invalid_argument("propagate_displacement: dimension mismatch");
  }
  return map.matrix() * shifts;
}

SymplecticMap preprocessing_map(double a, double b) {
  const SymplecticMap gates[] = {gate_sum_inv(2, 1, 0), gate_squeeze(2, 0, 1.0 / a),
                                 gate_squeeze(2, 1, 1.0 / b)};
  return compose(gates);
}

SymplecticMap preprocessing_with_ancilla_squeezers(double a, double b) {
  const SymplecticMap gates[] = {gate_squeeze(2, 0, a), gate_squeeze(2, 1, b),
                                 preprocessing_map(a, b)};
  return compose(gates);
}

SymplecticMap steane_circuit() {
  const SymplecticMap gates[] = {gate_sum(3, 0, 1), gate_sum(3, 2, 0)};
  return compose(gates);
}

SymplecticMap p_steane_circuit(double a, double b) {
  // Embed the two-mode preprocessing on ancilla modes 1 and 2.
  Eigen::MatrixXd pre = Eigen::MatrixXd::Identity(6, 6);
  pre.block(2, 2, 4, 4) = preprocessing_map(a, b).matrix();
  const SymplecticMap gates[] = {SymplecticMap(3, std::move(pre)), gate_sum(3, 2, 0),
                                 gate_sum(3, 0, 1)};
  return compose(gates);
}

SymplecticMap teleportation_circuit() {
  const SymplecticMap gates[] = {gate_bs50(3, 1, 2), gate_bs50(3, 0, 1)};
  return compose(gates);
}

ReadoutRule steane_readout() { return ReadoutRule{}; }

ReadoutRule teleportation_readout() {
  return ReadoutRule{.data_mode = 2,
                     .q_meas_mode = 0,
                     .q_meas_scale = kSqrt2,
                     .p_meas_mode = 1,
                     .p_meas_scale = kSqrt2};
}

Eigen::Matrix<double, 4, 6> syndrome_rows(const SymplecticMap& circuit,
                                          const ReadoutRule& readout) {
  if (circuit.n_modes() != 3) {
    throw std::invalid_argument("syndrome_rows: correction circuits act on 3 modes");
  }
  const Eigen::MatrixXd& s = circuit.matrix();
  Eigen::Matrix<double, 4, 6> rows;
  rows.row(0) = s.row(q_index(readout.data_mode));
  rows.row(1) = readout.q_meas_scale * s.row(q_index(readout.q_meas_mode));
  rows.row(2) = s.row(p_index(readout.data_mode));
  rows.row(3) = readout.p_meas_scale * s.row(p_index(readout.p_meas_mode));
  return rows;
}

bool StabilizerLattice::generators_commute(double tol) const {
  const Eigen::MatrixXd omega = symplectic_form(n_modes);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      const double w = generators[i].dot(omega * generators[j]);
      if (std::abs(w / 2.0 - std::round(w / 2.0)) > tol) return false;
    }
  }
  return true;
}

StabilizerLattice plus_zero_stabilizers() {
  StabilizerLattice lattice{.n_modes = 2, .generators = {}};
  auto make = [](int index, double value) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(4);
    c[index] = value;
    return c;
  };
  lattice.generators = {make(p_index(0), -1.0), make(q_index(0), 2.0),
                        make(p_index(1), -2.0), make(q_index(1), 1.0)};
  return lattice;
}

StabilizerLattice conjugate(const StabilizerLattice& lattice,
                            const SymplecticMap& map) {
  if (map.n_modes() != lattice.n_modes) {
    throw std::invalid_argument("conjugate: mode-count mismatch");
  }
  // S^{-T} = -Omega S Omega for symplectic S.
  const Eigen::MatrixXd omega = symplectic_form(lattice.n_modes);
  const Eigen::MatrixXd inv_t = -omega * map.matrix() * omega;
  StabilizerLattice out{.n_modes = lattice.n_modes, .generators = {}};
  out.generators.reserve(lattice.generators.size());
  for (const Eigen::VectorXd& c : lattice.generators) {
    out.generators.push_back(inv_t * c);
  }
  return out;
}

IntMatrix hermite_normal_form(IntMatrix rows) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("hermite_normal_form: ragged rows");
  }
  std::size_t pivot = 0;
  for (std::size_t col = 0; col < cols && pivot < rows.size(); ++col) {
    bool found = false;
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot; r < rows.size(); ++r) {
        if (rows[r][col] != 0 &&
            (best == rows.size() || std::llabs(rows[r][col]) < std::llabs(rows[best][col]))) {
          best = r;
        }
      }
      if (best == rows.size()) break;
      found = true;
      std::swap(rows[pivot], rows[best]);
      bool cleared = true;
      for (std::size_t r = pivot + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        axpy_row(rows[r], rows[r][col] / rows[pivot][col], rows[pivot]);
        if (rows[r][col] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (!found) continue;
    if (rows[pivot][col] < 0) {
      for (auto& v : rows[pivot]) v = -v;
    }
    for (std::size_t r = 0; r < pivot; ++r) {
      axpy_row(rows[r], floor_div(rows[r][col], rows[pivot][col]), rows[pivot]);
    }
    ++pivot;
  }
  rows.resize(pivot);
  return rows;
}

IdentityReport verify_preprocessing_identity(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("verify_preprocessing_identity: a and b must be finite and > 0");
  }
  IdentityReport report;
  report.a = a;
  report.b = b;
  report.m = 2.0 * a / b;

  const SymplecticMap u2 = preprocessing_with_ancilla_squeezers(a, b);
  const SymplecticMap gates[] = {gate_squeeze(2, 0, a), gate_squeeze(2, 1, b),
                                 gate_sum_inv(2, 1, 0), gate_squeeze(2, 0, 1.0 / a),
                                 gate_squeeze(2, 1, 1.0 / b)};
  for (const SymplecticMap& g : gates) {
    report.max_symplectic_defect = std::max(report.max_symplectic_defect, g.symplectic_defect());
  }
  report.max_symplectic_defect = std::max(report.max_symplectic_defect, u2.symplectic_defect());

  report.original = plus_zero_stabilizers();
  report.transformed = conjugate(report.original, u2);

  auto to_int = [](const StabilizerLattice& lattice, bool& integral) {
    IntMatrix rows;
    integral = true;
    for (const Eigen::VectorXd& c : lattice.generators) {
      std::vector<std::int64_t> row;
      for (Eigen::Index i = 0; i < c.size(); ++i) {
        const double r = std::round(c[i]);
        if (std::abs(c[i] - r) > kIntegralTol || std::abs(r) > 1e15) integral = false;
        row.push_back(static_cast<std::int64_t>(r));
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };

  bool original_integral = false;
  const IntMatrix base = to_int(report.original, original_integral);
  const IntMatrix moved = to_int(report.transformed, report.integral);
  // A non-integral generator cannot lie in the integer lattice of the
  // original set.
  report.identical = original_integral && report.integral &&
                     hermite_normal_form(base) == hermite_normal_form(moved);
  return report;
}

std::string format_report(const IdentityReport& report) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "a = " << report.a << "\n";
  out << "b = " << report.b << "\n";
  out << "m = 2a/b = " << report.m << "\n";
  out << "symplectic defect (max |S Omega S^T - Omega|) = " << std::setprecision(3)
      << report.max_symplectic_defect << "\n";
  out << "SYMPLECTIC: " << (report.max_symplectic_defect <= 1e-12 ? "PASS" : "FAIL") << "\n";
  out << "# exponent vectors in units of sqrt(pi) over (q2, p2, q3, p3)\n";
  for (std::size_t i = 0; i < report.original.generators.size(); ++i) {
    out << "S" << i + 1 << "  = " << format_vector(report.original.generators[i]) << "\n";
  }
  for (std::size_t i = 0; i < report.transformed.generators.size(); ++i) {
    out << "S" << i + 1 << "' = " << format_vector(report.transformed.generators[i]) << "\n";
  }
  out << "INTEGRAL: " << (report.integral ? "yes" : "no") << "\n";
  out << "IDENTITY: " << (report.identical ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace gkpec
