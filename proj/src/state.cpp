#include "qst/state.hpp"

#include <cmath>
#include <stdexcept>

namespace qst {

namespace {

void check_qubit_count(int n, int cap = kDenseQubitCap) {
  if (n < 1 || n > cap) {
    throw std::invalid_argument("qubit count outside dense cap [1, " +
                                std::to_string(cap) + "]");
  }
}

double log_in_base(double x, LogBase base) {
  return base == LogBase::two ? std::log2(x) : std::log(x);
}

}  // namespace

PureState::PureState(int n_, Eigen::VectorXcd amps) : n(n_), amplitudes(std::move(amps)) {
  check_qubit_count(n);
  if (amplitudes.size() != Eigen::Index{1} << n) {
    throw std::invalid_argument("PureState: amplitude count != 2^n");
  }
  if (std::abs(amplitudes.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("PureState: not normalized");
  }
}

PureState PureState::zero(int n) {
  check_qubit_count(n);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  amps[0] = 1.0;
  return PureState(n, std::move(amps));
}

DensityMatrix::DensityMatrix(int n_, Eigen::MatrixXcd m) : n(n_), entries(std::move(m)) {
  check_qubit_count(n);
  const Eigen::Index d = Eigen::Index{1} << n;
  if (entries.rows() != d || entries.cols() != d) {
    throw std::invalid_argument("DensityMatrix: shape != 2^n x 2^n");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  check_qubit_count(n);
  const Eigen::Index d = Eigen::Index{1} << n;
  return DensityMatrix(
      n, Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

void DensityMatrix::validate(double tol) const {
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (std::abs(entries.trace() - Complex{1.0, 0.0}) > tol) {
    throw std::invalid_argument("DensityMatrix: trace != 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries,
                                                         Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }
}

PureState random_pure_state(int n, SeededRng& rng) {
  check_qubit_count(n);
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::VectorXcd amps(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto [re, im] = rng.gaussian_pair();
    amps[i] = Complex{re, im};
  }
  amps /= amps.norm();
  return PureState(n, std::move(amps));
}

PureState random_pure_state(int n, std::uint64_t seed) {
  SeededRng rng(seed);
  return random_pure_state(n, rng);
}

DensityMatrix density_from_pure(const PureState& state) {
  return DensityMatrix(state.n, state.amplitudes * state.amplitudes.adjoint());
}

double trace_norm(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("trace_norm: matrix not square");
  }
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym <= kDensityTolerance) {
    // Hermitian: singular values are the absolute eigenvalues.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.adjoint() * m,
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

double frobenius_norm(const Eigen::MatrixXcd& m) { return m.norm(); }

double fidelity(const PureState& a, const PureState& b) {
  if (a.n != b.n) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  return std::norm(a.amplitudes.dot(b.amplitudes));
}

double von_neumann_entropy(const DensityMatrix& rho, LogBase base) {
  rho.validate();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries,
                                                         Eigen::EigenvaluesOnly);
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()[i];
    if (lambda > kEntropyEigenvalueFloor) {
      entropy -= lambda * log_in_base(lambda, base);
    }
  }
  return entropy;
}

PauliCoefficients pauli_decompose(const DensityMatrix& rho) {
  const int n = rho.n;
  const std::int64_t d = std::int64_t{1} << n;
  Eigen::VectorXcd c(d * d);
  // c_{a,b} = sum_j rho(j^a, j) (-1)^(b*j): a Walsh-Hadamard transform of
  // the a-th XOR diagonal, one slice per a.
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < d; ++a) {
    std::vector<Complex> slice(static_cast<std::size_t>(d));
    for (std::int64_t j = 0; j < d; ++j) {
      slice[static_cast<std::size_t>(j)] =
          rho.entries(j ^ a, j);
    }
    kernels::wht(std::span<Complex>(slice), kernels::Exec::serial);
    for (std::int64_t b = 0; b < d; ++b) {
      c[(a << n) | b] = slice[static_cast<std::size_t>(b)];
    }
  }
  return PauliCoefficients{n, std::move(c)};
}

PauliCoefficients pauli_decompose_direct(const DensityMatrix& rho) {
  const int n = rho.n;
  const std::int64_t d = std::int64_t{1} << n;
  Eigen::VectorXcd c(d * d);
  for (std::int64_t a = 0; a < d; ++a) {
    for (std::int64_t b = 0; b < d; ++b) {
      Complex acc = 0.0;
      for (std::int64_t j = 0; j < d; ++j) {
        const double sign = parity_sign(static_cast<Bits>(b), static_cast<Bits>(j));
        acc += sign * rho.entries(j ^ a, j);
      }
      c[(a << n) | b] = acc;
    }
  }
  return PauliCoefficients{n, std::move(c)};
}

DensityMatrix pauli_reconstruct(const PauliCoefficients& coeffs) {
  const int n = coeffs.n;
  const std::int64_t d = std::int64_t{1} << n;
  if (coeffs.c.size() != d * d) {
    throw std::invalid_argument("pauli_reconstruct: coefficient count != 4^n");
  }
  Eigen::MatrixXcd m(d, d);
  const double scale = 1.0 / static_cast<double>(d);
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < d; ++a) {
    std::vector<Complex> slice(static_cast<std::size_t>(d));
    for (std::int64_t b = 0; b < d; ++b) {
      slice[static_cast<std::size_t>(b)] = coeffs.c[(a << n) | b];
    }
    kernels::wht(std::span<Complex>(slice), kernels::Exec::serial);
    for (std::int64_t j = 0; j < d; ++j) {
      m(j ^ a, j) = scale * slice[static_cast<std::size_t>(j)];
    }
  }
  return DensityMatrix(n, std::move(m));
}

}  // namespace qst
