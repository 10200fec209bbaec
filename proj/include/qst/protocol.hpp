#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qst/pauli.hpp"
#include "qst/randomizer.hpp"
#include "qst/security.hpp"
#include "qst/state.hpp"

namespace qst {

/// An m-party chain: party 1 sends, parties 2..m-1 relay, party m decodes.
/// Hop j is the link from party j to party j+1; party j < m draws its key
/// from hop_sets[j-1] and party m's key is the XOR of all the others.
struct ProtocolConfig {
  int parties = 0;
  int n = 0;
  double epsilon = 0.0;
  std::vector<KeySet> hop_sets;  // parties - 1 entries
  std::uint64_t seed = 0;
  std::vector<std::string> hop_provenance;  // file hash or sampling note

  ProtocolConfig(int parties, int n, double epsilon,
                 std::vector<KeySet> hop_sets, std::uint64_t seed);

  int hop_count() const { return parties - 1; }
  /// Composition of the first `hops` wire channels (the adversary's view).
  ChannelSpec wire_channel(int hops) const;
};

/// Samples every hop set at the per-hop threshold
/// epsilon^(1/m) 2^(-n/(2m)), each of size 2^dn_key_length(n, epsilon).
struct SampledHops {
  std::vector<KeySet> hop_sets;
  std::vector<CertifyResult> certificates;
  bool all_certified = false;
};
SampledHops sample_hop_sets(int parties, int n, double epsilon,
                            std::uint64_t seed, int max_retries);

/// Per-party Pauli keys with XOR = 0.
struct CorrelatedKeys {
  std::vector<PauliKey> keys;

  /// XOR over all keys; the zero key when the invariant holds.
  PauliKey combined() const;
};

CorrelatedKeys keygen_correlated(const ProtocolConfig& config);

struct BusMessage {
  int hop = 0;  // 1-based link index
  int from = 0; // 1-based party ids
  int to = 0;
  PureState payload;
};

struct Delivery {
  BusMessage message;
  bool captured = false;  // a tapped link hands the adversary a copy
};

/// FIFO delivery along an acyclic chain. Classical simulation copies the
/// ciphertext for tapped links; physical no-cloning is knowingly idealized.
std::vector<Delivery> bus_deliver(int parties, std::vector<BusMessage> messages,
                                  const std::set<int>& tapped_hops);

struct HopRecord {
  int hop = 0;
  int sender = 0;
  int receiver = 0;
  bool captured = false;
  std::optional<PureState> ciphertext;  // kept only when recording states
};

struct Transcript {
  int parties = 0;
  int n = 0;
  std::uint64_t seed = 0;
  CorrelatedKeys keys;
  std::vector<HopRecord> hops;
  std::optional<PureState> decoded;
  double fidelity = 0.0;   // |<input|decoded>|^2, global phase discarded
  bool decode_ok = false;  // fidelity >= 1 - 1e-12
  bool no_cloning_idealized = true;
};

struct RunOptions {
  std::set<int> tapped_hops;
  bool record_states = false;
  /// Test hook: XOR this packed key into party m's key, breaking the
  /// correlation invariant on purpose.
  Bits corrupt_last_key = 0;
};

Transcript run_protocol(const ProtocolConfig& config, const PureState& input,
                        const RunOptions& options = {});

/// Adversary's average state on hop j for a given input: the composition of
/// the first j wire channels applied to rho.
DensityMatrix eavesdropper_state(const ProtocolConfig& config, int hop,
                                 const DensityMatrix& rho);

struct HopSecurity {
  int hop = 0;
  double beta_max = 0.0;            // bias of E_j alone
  double threshold = 0.0;           // per-hop target
  bool certified = false;
  double cumulative_beta_max = 0.0; // composed hops 1..j
  double measured_max_distance = 0.0;
};

struct ProtocolSecurityReport {
  int parties = 0;
  int n = 0;
  double epsilon = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<HopSecurity> hops;
  double composed_beta_max = 0.0;
  double composed_max_distance = 0.0;
  // Idealized model from the text: an m-th map with the marginal law of the
  // dependent key composed on top of the wire channel. Reported next to the
  // true per-hop view; neither is asserted over the other.
  double idealized_m_fold_beta_max = 0.0;
  double idealized_m_fold_max_distance = 0.0;
  double chi = 0.0;        // canonical orthogonal ensemble
  double chi_bound = 0.0;  // log_base(1 + d * epsilon)
  LogBase chi_base = LogBase::two;
  bool chi_bound_small_de = false;
  bool pass = false;
  std::string caveat;
};

ProtocolSecurityReport security_report(const ProtocolConfig& config, int trials,
                                       std::uint64_t seed,
                                       LogBase base = LogBase::two);

}  // namespace qst
