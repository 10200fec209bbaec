#include "qst/randomizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qst {

namespace {

void check_bias_cap(int n, int bias_cap) {
  if (2 * n > bias_cap) {
    throw std::invalid_argument("bias transform: 2n exceeds cap " +
                                std::to_string(bias_cap));
  }
}

void check_same_n(const KeySet& e, const DensityMatrix& rho) {
  if (e.n != rho.n) {
    throw std::invalid_argument("channel: key set and state dimension mismatch");
  }
}

double max_nonzero_abs(const std::vector<double>& values) {
  double best = 0.0;
  for (std::size_t y = 1; y < values.size(); ++y) {
    best = std::max(best, std::abs(values[y]));
  }
  return best;
}

BiasProfile profile_from_sums(int n, const std::vector<std::int64_t>& sums,
                              std::size_t set_size) {
  BiasProfile profile;
  profile.n = n;
  profile.beta.resize(sums.size());
  const double size = static_cast<double>(set_size);
  for (std::size_t y = 0; y < sums.size(); ++y) {
    profile.beta[y] = std::abs(static_cast<double>(sums[y])) / size;
  }
  profile.beta_max = max_nonzero_abs(profile.beta);
  return profile;
}

}  // namespace

KeySet::KeySet(int n_, std::vector<PauliKey> keys_)
    : n(n_), keys(std::move(keys_)) {
  if (keys.empty()) {
    throw std::invalid_argument("KeySet: empty");
  }
  for (const auto& k : keys) {
    if (k.n != n) {
      throw std::invalid_argument("KeySet: key dimension mismatch");
    }
  }
  std::set<Bits> seen;
  for (const auto& k : keys) {
    seen.insert(k.packed());
  }
  unique = seen.size() == keys.size();
}

KeySet KeySet::full(int n) {
  if (n < 1 || n > kDenseQubitCap) {
    throw std::invalid_argument("KeySet::full: n outside dense cap");
  }
  std::vector<PauliKey> keys;
  const Bits count = Bits{1} << (2 * n);
  keys.reserve(count);
  for (Bits y = 0; y < count; ++y) {
    keys.push_back(PauliKey::from_packed(n, y));
  }
  return KeySet(n, std::move(keys));
}

KeySet KeySet::singleton(PauliKey key) {
  return KeySet(key.n, std::vector<PauliKey>{key});
}

std::vector<Bits> KeySet::packed() const {
  std::vector<Bits> out;
  out.reserve(keys.size());
  for (const auto& k : keys) {
    out.push_back(k.packed());
  }
  return out;
}

ChannelSpec::ChannelSpec(std::vector<KeySet> hops_) : hops(std::move(hops_)) {
  if (hops.empty()) {
    throw std::invalid_argument("ChannelSpec: no hops");
  }
  for (const auto& hop : hops) {
    if (hop.n != hops.front().n) {
      throw std::invalid_argument("ChannelSpec: mixed qubit counts");
    }
  }
}

double bias(const KeySet& e, Bits a, Bits b) {
  const PauliKey point(e.n, a, b);  // validates widths
  std::int64_t acc = 0;
  for (const auto& k : e.keys) {
    acc += (std::popcount(k.packed() & point.packed()) & 1) ? -1 : 1;
  }
  return std::abs(static_cast<double>(acc)) / static_cast<double>(e.size());
}

BiasProfile bias_profile(const KeySet& e, kernels::Exec exec, int bias_cap) {
  check_bias_cap(e.n, bias_cap);
  const auto packed = e.packed();
  auto sums = kernels::multiplicity_vector(packed, 2 * e.n);
  kernels::wht(std::span<std::int64_t>(sums), exec);
  return profile_from_sums(e.n, sums, e.size());
}

BiasProfile bias_profile_direct(const KeySet& e, kernels::Exec exec,
                                int bias_cap) {
  check_bias_cap(e.n, bias_cap);
  const auto packed = e.packed();
  const auto sums = kernels::character_sums_direct(packed, 2 * e.n, exec);
  return profile_from_sums(e.n, sums, e.size());
}

std::vector<double> channel_attenuation(const KeySet& e, kernels::Exec exec,
                                        int bias_cap) {
  check_bias_cap(e.n, bias_cap);
  const auto packed = e.packed();
  auto sums = kernels::multiplicity_vector(packed, 2 * e.n);
  kernels::wht(std::span<std::int64_t>(sums), exec);
  // The transform is indexed by (u,v)-pairing; the channel factor for
  // coefficient (a,b) is the transform at the swapped point (b || a).
  const int n = e.n;
  const Bits nmask = bit_mask(n);
  std::vector<double> factor(sums.size());
  const double size = static_cast<double>(e.size());
  for (std::size_t y = 0; y < sums.size(); ++y) {
    const Bits a = static_cast<Bits>(y) >> n;
    const Bits b = static_cast<Bits>(y) & nmask;
    const Bits swapped = (b << n) | a;
    factor[y] = static_cast<double>(sums[swapped]) / size;
  }
  return factor;
}

std::vector<double> composed_attenuation(const ChannelSpec& spec,
                                         kernels::Exec exec) {
  std::vector<double> product = channel_attenuation(spec.hops.front(), exec);
  for (std::size_t h = 1; h < spec.hops.size(); ++h) {
    const auto factor = channel_attenuation(spec.hops[h], exec);
    for (std::size_t y = 0; y < product.size(); ++y) {
      product[y] *= factor[y];
    }
  }
  return product;
}

DensityMatrix channel_apply_average(const KeySet& e, const DensityMatrix& rho,
                                    kernels::Exec exec) {
  check_same_n(e, rho);
  const std::int64_t d = std::int64_t{1} << e.n;
  const auto packed = e.packed();
  const Bits nmask = bit_mask(e.n);
  Eigen::MatrixXcd out(d, d);
  const double size = static_cast<double>(e.size());
  // out(i,j) = (1/s) sum_(u,v) (-1)^(v*(i^j)) rho(i^u, j^u); each entry keeps
  // the key order fixed, so the result is thread-count independent.
#pragma omp parallel for schedule(static) if (exec == kernels::Exec::parallel)
  for (std::int64_t cell = 0; cell < d * d; ++cell) {
    const std::int64_t i = cell >> e.n;
    const std::int64_t j = cell & nmask;
    Complex acc = 0.0;
    for (const Bits key : packed) {
      const Bits u = key >> e.n;
      const Bits v = key & nmask;
      const double sign = parity_sign(v, static_cast<Bits>(i ^ j));
      acc += sign * rho.entries(i ^ u, j ^ u);
    }
    out(i, j) = acc / size;
  }
  return DensityMatrix(rho.n, std::move(out));
}

DensityMatrix apply_attenuation(const DensityMatrix& rho,
                                const std::vector<double>& factor) {
  const std::size_t expected = std::size_t{1} << (2 * rho.n);
  if (factor.size() != expected) {
    throw std::invalid_argument("apply_attenuation: factor table size != 4^n");
  }
  PauliCoefficients coeffs = pauli_decompose(rho);
  for (Eigen::Index y = 0; y < coeffs.c.size(); ++y) {
    coeffs.c[y] *= factor[static_cast<std::size_t>(y)];
  }
  return pauli_reconstruct(coeffs);
}

DensityMatrix channel_apply_spectral(const KeySet& e, const DensityMatrix& rho,
                                     kernels::Exec exec) {
  check_same_n(e, rho);
  return apply_attenuation(rho, channel_attenuation(e, exec));
}

DensityMatrix compose_apply(const ChannelSpec& spec, const DensityMatrix& rho,
                            kernels::Exec exec) {
  if (spec.n() != rho.n) {
    throw std::invalid_argument("compose_apply: dimension mismatch");
  }
  return apply_attenuation(rho, composed_attenuation(spec, exec));
}

int dn_key_length(int n, double epsilon) {
  if (n < 1) {
    throw std::invalid_argument("dn_key_length: n < 1");
  }
  if (!(epsilon > 0.0) || epsilon > 1.0) {
    throw std::invalid_argument("dn_key_length: epsilon outside (0, 1]");
  }
  const double raw = n + 2.0 * std::log2(1.0 / epsilon) + 4.0;
  return static_cast<int>(std::ceil(raw - 1e-9));
}

double per_hop_threshold(int n, double epsilon, int parties) {
  if (parties < 2) {
    throw std::invalid_argument("per_hop_threshold: parties < 2");
  }
  return std::pow(epsilon, 1.0 / parties) *
         std::exp2(-static_cast<double>(n) / (2.0 * parties));
}

CertifyResult sample_and_certify_threshold(int n, double threshold,
                                           std::size_t set_size,
                                           std::uint64_t seed,
                                           int max_retries) {
  if (n < 1 || 2 * n > kBiasBitCap) {
    throw std::invalid_argument("sample_and_certify: n outside bias cap");
  }
  if (set_size == 0 || max_retries < 0) {
    throw std::invalid_argument("sample_and_certify: bad sampling parameters");
  }
  CertifyResult result;
  result.threshold = threshold;
  result.set_size = set_size;
  result.best_beta_max = std::numeric_limits<double>::infinity();
  const Bits space = Bits{1} << (2 * n);
  SeededRng root(seed);
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    SeededRng rng = root.fork(static_cast<std::uint64_t>(attempt));
    std::vector<PauliKey> keys;
    keys.reserve(set_size);
    for (std::size_t i = 0; i < set_size; ++i) {
      keys.emplace_back(
          PauliKey::from_packed(n, static_cast<Bits>(rng.below(space))));
    }
    KeySet candidate(n, std::move(keys));
    BiasProfile profile = bias_profile(candidate);
    result.attempts = attempt + 1;
    if (profile.beta_max < result.best_beta_max) {
      result.best_beta_max = profile.beta_max;
    }
    if (profile.beta_max <= threshold) {
      result.certified = true;
      result.set = std::move(candidate);
      result.profile = std::move(profile);
      return result;
    }
  }
  return result;
}

CertifyResult sample_and_certify(int n, double epsilon, std::uint64_t seed,
                                 int max_retries) {
  const int bits = dn_key_length(n, epsilon);
  const double threshold = epsilon * std::exp2(-n / 2.0);
  return sample_and_certify_threshold(n, threshold, std::size_t{1} << bits,
                                      seed, max_retries);
}

EpsilonReport verify_epsilon(const ChannelSpec& spec, double epsilon,
                             int trials, std::uint64_t seed) {
  const int n = spec.n();
  if (n > kDenseQubitCap) {
    throw std::invalid_argument("verify_epsilon: n beyond dense cap");
  }
  const double d = std::exp2(n);

  EpsilonReport report;
  report.n = n;
  report.epsilon = epsilon;
  report.threshold = epsilon * std::exp2(-n / 2.0);
  report.beta_max = max_nonzero_abs(composed_attenuation(spec));
  report.epsilon_implied = report.beta_max * std::exp2(n / 2.0);
  report.analytic_certified = report.beta_max <= report.threshold;
  report.frobenius_sq_bound = (1.0 + epsilon * epsilon) / d;
  report.trials = trials;

  const DensityMatrix mixed = DensityMatrix::maximally_mixed(n);
  report.chain_holds = true;
  report.frobenius_concentration_holds = true;
  SeededRng root(seed);
  for (int t = 0; t < trials; ++t) {
    SeededRng rng = root.fork(static_cast<std::uint64_t>(t));
    const PureState psi = random_pure_state(n, rng);
    const DensityMatrix out = compose_apply(spec, density_from_pure(psi));
    const double distance = trace_norm(out.entries - mixed.entries);
    const double frob_sq = std::pow(frobenius_norm(out.entries), 2);
    const double chain_rhs = std::sqrt(std::max(d * frob_sq - 1.0, 0.0));
    report.max_trace_distance = std::max(report.max_trace_distance, distance);
    report.max_frobenius_sq = std::max(report.max_frobenius_sq, frob_sq);
    if (distance > chain_rhs + 1e-12) {
      report.chain_holds = false;
    }
    if (d * frob_sq - 1.0 > epsilon * epsilon + 1e-12) {
      report.frobenius_concentration_holds = false;
    }
  }
  report.monte_carlo_within_epsilon =
      trials == 0 || report.max_trace_distance <= epsilon + 1e-12;
  report.pass = report.chain_holds &&
                (!report.analytic_certified ||
                 (report.monte_carlo_within_epsilon &&
                  report.frobenius_concentration_holds));
  return report;
}

EpsilonReport verify_epsilon(const KeySet& e, double epsilon, int trials,
                             std::uint64_t seed) {
  return verify_epsilon(ChannelSpec({e}), epsilon, trials, seed);
}

}  // namespace qst
