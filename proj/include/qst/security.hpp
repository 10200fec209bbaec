#pragma once

#include <cstdint>
#include <vector>

#include "qst/randomizer.hpp"
#include "qst/state.hpp"

namespace qst {

/// {p_i, rho_i}: probabilities nonnegative, summing to one.
struct Ensemble {
  std::vector<DensityMatrix> states;
  std::vector<double> probs;

  Ensemble(std::vector<DensityMatrix> states, std::vector<double> probs);
  static Ensemble uniform(std::vector<DensityMatrix> states);
  /// The 2^n computational-basis states with uniform probabilities.
  static Ensemble computational_basis(int n);

  int n() const { return states.front().n; }
};

/// chi = S(sum_i p_i R(rho_i)) - sum_i p_i S(R(rho_i)).
double holevo_information(const Ensemble& ensemble, const ChannelSpec& spec,
                          LogBase base = LogBase::two);

/// Holevo quantity of the raw ensemble (identity channel).
double holevo_information(const Ensemble& ensemble, LogBase base = LogBase::two);

/// Fast exact path for the computational-basis ensemble: through a key-set
/// channel every basis state stays diagonal, so the spectrum is read off a
/// Walsh-Hadamard transform of the Z-line attenuation factors. Cross-checked
/// against the dense path in the tests.
double holevo_information_basis(const ChannelSpec& spec, LogBase base = LogBase::two);

struct HolevoBound {
  double value = 0.0;      // log_base(1 + d * epsilon)
  bool small_de = false;   // the paper's d*epsilon < 1 regime
};

HolevoBound holevo_bound(int d, double epsilon, LogBase base = LogBase::two);

/// (1/2) || R(rho1) - R(rho2) ||_1.
double distinguishing_advantage(const ChannelSpec& spec, const DensityMatrix& rho1,
                                const DensityMatrix& rho2);

}  // namespace qst
