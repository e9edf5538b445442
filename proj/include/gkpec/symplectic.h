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

// Gaussian gates as linear maps on the quadrature column
//
//     x = (q_0, p_0, q_1, p_1, ..., q_{n-1}, p_{n-1})
//
// Modes are 0-based here; the data mode of every correction circuit is
// mode 0 and the two ancillas are modes 1 and 2.
//
// The matrix of a gate is its Heisenberg action U^dag x U = S x. The same
// matrix moves displacement errors forward through the gate: a shift d
// applied before U equals the shift S d applied after it. compose() follows
// circuit order, so the first gate applied is the rightmost factor.
//
// Only the linear part of a circuit lives here. Homodyne measurement and
// feedback are nonlinear and belong to schemes.h.

#ifndef GKPEC_SYMPLECTIC_H_
#define GKPEC_SYMPLECTIC_H_

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gkpec {

class SymplecticMap {
 public:
  /// Throws std::invalid_argument unless matrix is 2n x 2n with n >= 1.
  SymplecticMap(int n_modes, Eigen::MatrixXd matrix);

  static SymplecticMap Identity(int n_modes);

  int n_modes() const { return n_modes_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  /// max_ij |(S Omega S^T - Omega)_ij|.
  double symplectic_defect() const;
  bool is_symplectic(double tol = 1e-12) const { return symplectic_defect() <= tol; }

 private:
  int n_modes_;
  Eigen::MatrixXd matrix_;
};

/// Block-diagonal Omega with [[0, 1], [-1, 0]] per mode.
Eigen::MatrixXd symplectic_form(int n_modes);

/// q -> q / r, p -> r p on one mode.
SymplecticMap gate_squeeze(int n_modes, int mode, double r);

/// q_t -> q_t + q_c, p_c -> p_c - p_t.
SymplecticMap gate_sum(int n_modes, int control, int target);

/// q_t -> q_t - q_c, p_c -> p_c + p_t.
SymplecticMap gate_sum_inv(int n_modes, int control, int target);

/// 50:50 beam splitter: x_j -> (x_j - x_k)/sqrt2, x_k -> (x_j + x_k)/sqrt2
/// for x in {q, p}.
SymplecticMap gate_bs50(int n_modes, int j, int k);

/// Circuit-order composition; compose({}) is not defined without a mode
/// count, so use the overload taking n_modes for possibly empty circuits.
SymplecticMap compose(std::span<const SymplecticMap> circuit);
SymplecticMap compose(int n_modes, std::span<const SymplecticMap> circuit);

Eigen::VectorXd propagate_displacement(const SymplecticMap& map,
                                       const Eigen::VectorXd& shifts);

// ---------------------------------------------------------------------------
// Correction circuits (linear part).

/// Ancilla preprocessing on two modes: SUM^{-1}_{1->0}, then S_0(1/a) and
/// S_1(1/b). Mode 0 holds the |+> ancilla, mode 1 the |0> ancilla.
SymplecticMap preprocessing_map(double a, double b);

/// preprocessing_map preceded by the rectangular-lattice squeezers S_0(a),
/// S_1(b); this is the map that acts on the ancilla stabilizers.
SymplecticMap preprocessing_with_ancilla_squeezers(double a, double b);

/// Data mode 0, ancillas 1 (|+>) and 2 (|0>): SUM_{0->1} then SUM_{2->0}.
SymplecticMap steane_circuit();

/// Preprocessing on modes (1, 2), then SUM_{2->0} and SUM_{0->1}.
SymplecticMap p_steane_circuit(double a, double b);

/// BS_{1->2} forming the Bell resource, then BS_{0->1}; the data leaves on
/// mode 2.
SymplecticMap teleportation_circuit();

/// Which quadratures a circuit reads out and where the corrected data ends
/// up. Measured shifts are scaled so that they equal the argument of the
/// feedback function.
struct ReadoutRule {
  int data_mode = 0;
  int q_meas_mode = 1;
  double q_meas_scale = 1.0;
  int p_meas_mode = 2;
  double p_meas_scale = -1.0;
};

ReadoutRule steane_readout();
ReadoutRule teleportation_readout();

/// Rows (xi_q, m_q, xi_p, m_p) over the input shifts (u1, v1, u2, v2, u3, v3)
/// obtained by pushing a unit shift on each input through the circuit.
Eigen::Matrix<double, 4, 6> syndrome_rows(const SymplecticMap& circuit,
                                          const ReadoutRule& readout);

// ---------------------------------------------------------------------------
// Stabilizer lattices.

/// Displacement-exponential stabilizers exp(i sqrt(pi) c . x), stored by
/// their exponent vectors c (units of sqrt(pi), same ordering as x).
struct StabilizerLattice {
  int n_modes = 0;
  std::vector<Eigen::VectorXd> generators;

  /// True iff c_i^T Omega c_j is an even integer for every pair.
  bool generators_commute(double tol = 1e-9) const;
};

/// The four generators stabilizing |+>_0 |0>_1:
/// exp(-i sqrt(pi) p_0), exp(i 2 sqrt(pi) q_0), exp(-i 2 sqrt(pi) p_1),
/// exp(i sqrt(pi) q_1).
StabilizerLattice plus_zero_stabilizers();

/// U S U^dag for every generator, i.e. c -> S^{-T} c.
StabilizerLattice conjugate(const StabilizerLattice& lattice,
                            const SymplecticMap& map);

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Row-style Hermite normal form of the integer row lattice. Zero rows are
/// dropped, pivots are positive and entries above a pivot lie in [0, pivot).
IntMatrix hermite_normal_form(IntMatrix rows);

struct IdentityReport {
  double a = 0.0;
  double b = 0.0;
  double m = 0.0;  // 2a/b
  double max_symplectic_defect = 0.0;
  StabilizerLattice original;
  StabilizerLattice transformed;
  bool integral = false;   // every transformed exponent is an integer
  bool identical = false;  // the two integer lattices coincide
};

/// Checks that preprocessing maps the ideal ancilla pair back onto itself,
/// which holds exactly when 2a/b is an integer (tolerance 1e-9).
IdentityReport verify_preprocessing_identity(double a, double b);

/// Stable text rendering ending in "IDENTITY: PASS" or "IDENTITY: FAIL".
std::string format_report(const IdentityReport& report);

}  // namespace gkpec

#endif  // GKPEC_SYMPLECTIC_H_
