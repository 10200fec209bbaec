#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "qst/bits.hpp"
#include "qst/config.hpp"
#include "qst/kernels.hpp"
#include "qst/rng.hpp"

namespace qst {

using Complex = std::complex<double>;

enum class LogBase { two, e };

/// Dense n-qubit state vector, unit 2-norm. Amplitude index bit layout
/// follows bits.hpp: qubit 0 is the most significant index bit.
struct PureState {
  int n = 0;
  Eigen::VectorXcd amplitudes;

  PureState(int n, Eigen::VectorXcd amps);
  static PureState zero(int n);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes.size()); }
  double norm() const { return amplitudes.norm(); }
};

/// Dense density matrix: Hermitian, unit trace, PSD within kDensityTolerance.
struct DensityMatrix {
  int n = 0;
  Eigen::MatrixXcd entries;

  DensityMatrix(int n, Eigen::MatrixXcd m);
  static DensityMatrix maximally_mixed(int n);

  std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
  /// Throws std::invalid_argument if the defining invariants are violated.
  void validate(double tol = kDensityTolerance) const;
};

/// Coefficients c_{a,b} with rho = 2^-n sum c_{a,b} X^a Z^b, indexed by the
/// packed 2n-bit string (a << n) | b.
struct PauliCoefficients {
  int n = 0;
  Eigen::VectorXcd c;
};

/// Normalized vector of i.i.d. standard complex Gaussian amplitudes
/// (Haar-distributed), fully determined by the seed.
PureState random_pure_state(int n, std::uint64_t seed);
PureState random_pure_state(int n, SeededRng& rng);

DensityMatrix density_from_pure(const PureState& state);

/// ||M||_1 = tr sqrt(M^dag M), the sum of singular values.
double trace_norm(const Eigen::MatrixXcd& m);

/// ||M||_2 = sqrt(tr M^dag M).
double frobenius_norm(const Eigen::MatrixXcd& m);

double fidelity(const PureState& a, const PureState& b);

/// S(rho) = -tr rho log rho. Eigenvalues below kEntropyEigenvalueFloor are
/// treated as exact zeros.
double von_neumann_entropy(const DensityMatrix& rho, LogBase base = LogBase::two);

PauliCoefficients pauli_decompose(const DensityMatrix& rho);
DensityMatrix pauli_reconstruct(const PauliCoefficients& coeffs);

/// Reference route for pauli_decompose: one trace per coefficient,
/// c_{a,b} = sum_j rho(j^a, j) (-1)^(b*j), without the per-slice transform.
PauliCoefficients pauli_decompose_direct(const DensityMatrix& rho);

}  // namespace qst
