#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qst/kernels.hpp"
#include "qst/pauli.hpp"
#include "qst/state.hpp"

namespace qst {

/// Ordered multiset E of 2n-bit keys defining the channel
/// R_E(rho) = (1/|E|) sum_{(u,v) in E} X^u Z^v rho Z^v X^u.
struct KeySet {
  int n = 0;
  std::vector<PauliKey> keys;
  bool unique = false;  // recorded, not required

  KeySet(int n, std::vector<PauliKey> keys);
  static KeySet full(int n);
  static KeySet singleton(PauliKey key);

  std::size_t size() const { return keys.size(); }
  std::vector<Bits> packed() const;
};

/// |Bias(E, (a,b))| for every packed point (a << n) | b, plus the maximum
/// over nonzero points. beta[0] is always 1.
struct BiasProfile {
  int n = 0;
  std::vector<double> beta;
  double beta_max = 0.0;
};

/// Chained channel R_{E_last} o ... o R_{E_1}.
struct ChannelSpec {
  std::vector<KeySet> hops;

  explicit ChannelSpec(std::vector<KeySet> hops);
  int n() const { return hops.front().n; }
};

/// Single-point bias |E_{x in E} (-1)^(x*(a,b))|; integer character sum,
/// one division at the end.
double bias(const KeySet& e, Bits a, Bits b);

/// Full profile via a 2^(2n)-point Walsh-Hadamard transform over the
/// multiplicity vector of E.
BiasProfile bias_profile(const KeySet& e,
                         kernels::Exec exec = kernels::Exec::parallel,
                         int bias_cap = kBiasBitCap);

/// Same profile by direct per-point enumeration; the independent oracle.
BiasProfile bias_profile_direct(const KeySet& e,
                                kernels::Exec exec = kernels::Exec::parallel,
                                int bias_cap = kBiasBitCap);

/// Signed spectral factors of R_E: factor[(a << n) | b] =
/// E_{(u,v) in E} (-1)^(a*v + b*u), so that R_E scales the Pauli
/// coefficient c_{a,b} by factor[(a << n) | b]. Note the (a,b)/(b,a) swap
/// relative to the bias profile: |factor[a||b]| = beta[b||a].
std::vector<double> channel_attenuation(const KeySet& e,
                                        kernels::Exec exec = kernels::Exec::parallel,
                                        int bias_cap = kBiasBitCap);

/// Pointwise product of per-hop attenuation factors.
std::vector<double> composed_attenuation(const ChannelSpec& spec,
                                         kernels::Exec exec = kernels::Exec::parallel);

/// Scales every Pauli coefficient of rho by the matching factor. This is the
/// action of any key-averaged channel once its attenuation table is known.
DensityMatrix apply_attenuation(const DensityMatrix& rho,
                                const std::vector<double>& factor);

/// Key-averaged conjugation, entry by entry: O(|E| 4^n).
DensityMatrix channel_apply_average(const KeySet& e, const DensityMatrix& rho,
                                    kernels::Exec exec = kernels::Exec::parallel);

/// Same channel through the Pauli-coefficient picture: O(4^n n) after the
/// attenuation table is built. Agrees with channel_apply_average to 1e-12.
DensityMatrix channel_apply_spectral(const KeySet& e, const DensityMatrix& rho,
                                     kernels::Exec exec = kernels::Exec::parallel);

DensityMatrix compose_apply(const ChannelSpec& spec, const DensityMatrix& rho,
                            kernels::Exec exec = kernels::Exec::parallel);

/// ceil(n + 2 log2(1/epsilon) + 4), the key length sufficient for an
/// epsilon-randomizing map; the sampled set has 2^dn_key_length keys.
int dn_key_length(int n, double epsilon);

/// Per-hop bias target epsilon^(1/m) * 2^(-n/(2m)) for an m-party chain.
double per_hop_threshold(int n, double epsilon, int parties);

struct CertifyResult {
  bool certified = false;
  std::optional<KeySet> set;        // the accepted set (absent on failure)
  std::optional<BiasProfile> profile;
  double threshold = 0.0;
  std::size_t set_size = 0;
  int attempts = 0;
  double best_beta_max = 0.0;       // best (smallest) max bias seen
};

/// Draws 2^dn_key_length(n, epsilon) keys uniformly with replacement and
/// accepts iff beta_max <= epsilon * 2^(-n/2), retrying with fresh
/// randomness. Failure is reported, not thrown.
CertifyResult sample_and_certify(int n, double epsilon, std::uint64_t seed,
                                 int max_retries);

/// Same sampler against an explicit bias threshold (used for per-hop sets).
CertifyResult sample_and_certify_threshold(int n, double threshold,
                                           std::size_t set_size,
                                           std::uint64_t seed, int max_retries);

struct EpsilonReport {
  int n = 0;
  double epsilon = 0.0;
  double threshold = 0.0;        // epsilon * 2^(-n/2)
  double beta_max = 0.0;         // composed, over nonzero points
  double epsilon_implied = 0.0;  // beta_max * 2^(n/2)
  bool analytic_certified = false;
  double frobenius_sq_bound = 0.0;  // (1 + epsilon^2) / 2^n
  int trials = 0;
  double max_trace_distance = 0.0;
  double max_frobenius_sq = 0.0;
  bool chain_holds = false;   // ||R(rho)-I/d||_1 <= sqrt(d ||R(rho)||_2^2 - 1)
  bool frobenius_concentration_holds = false;  // d ||R(rho)||_2^2 - 1 <= eps^2
  bool monte_carlo_within_epsilon = false;
  bool pass = false;
};

/// Analytic certificate plus Monte-Carlo verification over random pure
/// states. Never throws on a failed bound; the report carries pass/fail.
EpsilonReport verify_epsilon(const ChannelSpec& spec, double epsilon,
                             int trials, std::uint64_t seed);
EpsilonReport verify_epsilon(const KeySet& e, double epsilon, int trials,
                             std::uint64_t seed);

}  // namespace qst
