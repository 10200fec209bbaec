#pragma once

namespace qst {

inline constexpr const char* kVersion = "0.1.0";

// Dense 2^n x 2^n matrices (density matrices, key matrices, channel
// application) are only allowed up to this qubit count.
inline constexpr int kDenseQubitCap = 10;

// Bias profiles run a 2^(2n)-point transform over the key space.
inline constexpr int kBiasBitCap = 28;  // 2n <= 28

// Eigenvalues below this are treated as exact zeros in entropy sums.
inline constexpr double kEntropyEigenvalueFloor = 1e-15;

// Tolerance for Hermiticity / unit trace / PSD checks on density matrices.
inline constexpr double kDensityTolerance = 1e-9;

}  // namespace qst
