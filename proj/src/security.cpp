#include "qst/security.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qst {

namespace {

double log_in_base(double x, LogBase base) {
  return base == LogBase::two ? std::log2(x) : std::log(x);
}

}  // namespace

Ensemble::Ensemble(std::vector<DensityMatrix> states_, std::vector<double> probs_)
    : states(std::move(states_)), probs(std::move(probs_)) {
  if (states.empty() || states.size() != probs.size()) {
    throw std::invalid_argument("Ensemble: states/probs size mismatch");
  }
  for (const auto& rho : states) {
    if (rho.n != states.front().n) {
      throw std::invalid_argument("Ensemble: mixed dimensions");
    }
  }
  double total = 0.0;
  for (const double p : probs) {
    if (p < 0.0) {
      throw std::invalid_argument("Ensemble: negative probability");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kDensityTolerance) {
    throw std::invalid_argument("Ensemble: probabilities do not sum to 1");
  }
}

Ensemble Ensemble::uniform(std::vector<DensityMatrix> states) {
  const std::size_t count = states.size();
  const double p = 1.0 / static_cast<double>(count);
  return Ensemble(std::move(states), std::vector<double>(count, p));
}

Ensemble Ensemble::computational_basis(int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  std::vector<DensityMatrix> states;
  states.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    m(i, i) = 1.0;
    states.emplace_back(n, std::move(m));
  }
  return uniform(std::move(states));
}

double holevo_information(const Ensemble& ensemble, const ChannelSpec& spec,
                          LogBase base) {
  if (ensemble.n() != spec.n()) {
    throw std::invalid_argument("holevo_information: dimension mismatch");
  }
  const Eigen::Index d = Eigen::Index{1} << ensemble.n();
  Eigen::MatrixXcd average = Eigen::MatrixXcd::Zero(d, d);
  double member_entropy = 0.0;
  for (std::size_t i = 0; i < ensemble.states.size(); ++i) {
    const DensityMatrix out = compose_apply(spec, ensemble.states[i]);
    average += ensemble.probs[i] * out.entries;
    member_entropy += ensemble.probs[i] * von_neumann_entropy(out, base);
  }
  return von_neumann_entropy(DensityMatrix(ensemble.n(), std::move(average)),
                             base) -
         member_entropy;
}

double holevo_information(const Ensemble& ensemble, LogBase base) {
  const int n = ensemble.n();
  return holevo_information(
      ensemble, ChannelSpec({KeySet::singleton(PauliKey::identity(n))}), base);
}

double holevo_information_basis(const ChannelSpec& spec, LogBase base) {
  const int n = spec.n();
  const std::int64_t d = std::int64_t{1} << n;
  const auto factor = composed_attenuation(spec);
  // R(|i><i|) is diagonal with entries 2^-n sum_b (-1)^(b*(i^j)) att[(0,b)];
  // every member shares one spectrum up to an index XOR, so chi reduces to
  // n - S of that spectrum (the ensemble average is exactly I/d).
  std::vector<double> zline(static_cast<std::size_t>(d));
  for (std::int64_t b = 0; b < d; ++b) {
    zline[static_cast<std::size_t>(b)] = factor[static_cast<std::size_t>(b)];
  }
  kernels::wht(std::span<double>(zline), kernels::Exec::serial);
  double member_entropy = 0.0;
  const double scale = 1.0 / static_cast<double>(d);
  for (std::int64_t j = 0; j < d; ++j) {
    const double lambda = zline[static_cast<std::size_t>(j)] * scale;
    if (lambda > kEntropyEigenvalueFloor) {
      member_entropy -= lambda * log_in_base(lambda, base);
    }
  }
  const double mixed_entropy =
      base == LogBase::two ? static_cast<double>(n)
                           : static_cast<double>(n) * std::log(2.0);
  return mixed_entropy - member_entropy;
}

HolevoBound holevo_bound(int d, double epsilon, LogBase base) {
  if (d < 1 || epsilon < 0.0) {
    throw std::invalid_argument("holevo_bound: bad arguments");
  }
  HolevoBound bound;
  bound.value = log_in_base(1.0 + d * epsilon, base);
  bound.small_de = d * epsilon < 1.0;
  return bound;
}

double distinguishing_advantage(const ChannelSpec& spec,
                                const DensityMatrix& rho1,
                                const DensityMatrix& rho2) {
  if (rho1.n != rho2.n || rho1.n != spec.n()) {
    throw std::invalid_argument("distinguishing_advantage: dimension mismatch");
  }
  const DensityMatrix out1 = compose_apply(spec, rho1);
  const DensityMatrix out2 = compose_apply(spec, rho2);
  return 0.5 * trace_norm(out1.entries - out2.entries);
}

}  // namespace qst
