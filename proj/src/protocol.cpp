#include "qst/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qst {

namespace {

constexpr const char* kPerHopCaveat =
    "per-hop trace-distance targets are not implied by the Frobenius chain; "
    "only the composed bound is certified";

}  // namespace

ProtocolConfig::ProtocolConfig(int parties_, int n_, double epsilon_,
                               std::vector<KeySet> hop_sets_, std::uint64_t seed_)
    : parties(parties_),
      n(n_),
      epsilon(epsilon_),
      hop_sets(std::move(hop_sets_)),
      seed(seed_) {
  if (parties < 2) {
    throw std::invalid_argument("ProtocolConfig: need at least two parties");
  }
  if (hop_sets.size() != static_cast<std::size_t>(parties - 1)) {
    throw std::invalid_argument("ProtocolConfig: need parties-1 hop key sets");
  }
  for (const auto& e : hop_sets) {
    if (e.n != n) {
      throw std::invalid_argument("ProtocolConfig: hop set dimension mismatch");
    }
  }
}

ChannelSpec ProtocolConfig::wire_channel(int hops) const {
  if (hops < 1 || hops > hop_count()) {
    throw std::invalid_argument("wire_channel: hop index outside [1, m-1]");
  }
  return ChannelSpec(std::vector<KeySet>(hop_sets.begin(),
                                         hop_sets.begin() + hops));
}

SampledHops sample_hop_sets(int parties, int n, double epsilon,
                            std::uint64_t seed, int max_retries) {
  if (parties < 2) {
    throw std::invalid_argument("sample_hop_sets: need at least two parties");
  }
  // A two-party chain is the plain single-set construction; the scaled
  // per-hop target only applies to m >= 3 chains.
  const double threshold = parties == 2
                               ? epsilon * std::exp2(-n / 2.0)
                               : per_hop_threshold(n, epsilon, parties);
  const std::size_t set_size = std::size_t{1} << dn_key_length(n, epsilon);
  SampledHops out;
  out.all_certified = true;
  SeededRng root(seed);
  for (int hop = 1; hop < parties; ++hop) {
    // Distinct sampling stream per hop, all derived from the one seed.
    SeededRng stream = root.fork(0x686f70 + static_cast<std::uint64_t>(hop));
    CertifyResult result = sample_and_certify_threshold(
        n, threshold, set_size, stream.next(), max_retries);
    out.all_certified = out.all_certified && result.certified;
    if (result.set.has_value()) {
      out.hop_sets.push_back(*result.set);
    }
    out.certificates.push_back(std::move(result));
  }
  return out;
}

PauliKey CorrelatedKeys::combined() const {
  if (keys.empty()) {
    throw std::invalid_argument("CorrelatedKeys: empty");
  }
  PauliKey acc = PauliKey::identity(keys.front().n);
  for (const auto& k : keys) {
    acc = acc ^ k;
  }
  return acc;
}

CorrelatedKeys keygen_correlated(const ProtocolConfig& config) {
  CorrelatedKeys out;
  out.keys.reserve(static_cast<std::size_t>(config.parties));
  SeededRng root(config.seed);
  PauliKey running = PauliKey::identity(config.n);
  for (int party = 1; party < config.parties; ++party) {
    const KeySet& pool = config.hop_sets[static_cast<std::size_t>(party - 1)];
    SeededRng stream = root.fork(0x6b6579 + static_cast<std::uint64_t>(party));
    const std::size_t pick = static_cast<std::size_t>(stream.below(pool.size()));
    const PauliKey key = pool.keys[pick];
    out.keys.push_back(key);
    running = running ^ key;
  }
  out.keys.push_back(running);  // party m: XOR of all the others
  return out;
}

std::vector<Delivery> bus_deliver(int parties, std::vector<BusMessage> messages,
                                  const std::set<int>& tapped_hops) {
  if (parties < 2) {
    throw std::invalid_argument("bus_deliver: need at least two parties");
  }
  std::vector<Delivery> schedule;
  schedule.reserve(messages.size());
  int expected_hop = 1;
  for (auto& msg : messages) {
    if (msg.hop != expected_hop || msg.from != msg.hop ||
        msg.to != msg.hop + 1 || msg.to > parties) {
      throw std::invalid_argument("bus_deliver: malformed chain topology");
    }
    const bool captured = tapped_hops.count(msg.hop) > 0;
    schedule.push_back(Delivery{std::move(msg), captured});
    ++expected_hop;
  }
  return schedule;
}

Transcript run_protocol(const ProtocolConfig& config, const PureState& input,
                        const RunOptions& options) {
  if (input.n != config.n) {
    throw std::invalid_argument("run_protocol: input dimension mismatch");
  }
  CorrelatedKeys keys = keygen_correlated(config);
  if (options.corrupt_last_key != 0) {
    PauliKey& last = keys.keys.back();
    last = last ^ PauliKey::from_packed(config.n, options.corrupt_last_key);
  }

  // Parties 1..m-1 encode and forward over the chain bus.
  std::vector<BusMessage> messages;
  PureState carried = input;
  for (int party = 1; party < config.parties; ++party) {
    carried = apply_key(carried, keys.keys[static_cast<std::size_t>(party - 1)]);
    messages.push_back(BusMessage{party, party, party + 1, carried});
  }
  std::vector<Delivery> schedule =
      bus_deliver(config.parties, std::move(messages), options.tapped_hops);

  // Party m applies its key to the last delivery.
  PureState decoded =
      apply_key(schedule.back().message.payload, keys.keys.back());

  Transcript transcript;
  transcript.parties = config.parties;
  transcript.n = config.n;
  transcript.seed = config.seed;
  transcript.keys = std::move(keys);
  for (const auto& delivery : schedule) {
    HopRecord record;
    record.hop = delivery.message.hop;
    record.sender = delivery.message.from;
    record.receiver = delivery.message.to;
    record.captured = delivery.captured;
    if (options.record_states) {
      record.ciphertext = delivery.message.payload;
    }
    transcript.hops.push_back(std::move(record));
  }
  transcript.fidelity = fidelity(input, decoded);
  transcript.decode_ok = transcript.fidelity >= 1.0 - 1e-12;
  transcript.decoded = std::move(decoded);
  return transcript;
}

DensityMatrix eavesdropper_state(const ProtocolConfig& config, int hop,
                                 const DensityMatrix& rho) {
  return compose_apply(config.wire_channel(hop), rho);
}

ProtocolSecurityReport security_report(const ProtocolConfig& config, int trials,
                                       std::uint64_t seed, LogBase base) {
  if (config.n > kDenseQubitCap) {
    throw std::invalid_argument("security_report: n beyond dense cap");
  }
  ProtocolSecurityReport report;
  report.parties = config.parties;
  report.n = config.n;
  report.epsilon = config.epsilon;
  report.trials = trials;
  report.seed = seed;
  report.chi_base = base;
  report.caveat = kPerHopCaveat;

  const int hop_count = config.hop_count();
  const double threshold =
      config.parties == 2
          ? config.epsilon * std::exp2(-config.n / 2.0)
          : per_hop_threshold(config.n, config.epsilon, config.parties);
  const std::int64_t d = std::int64_t{1} << config.n;

  std::vector<std::vector<double>> cumulative;
  std::vector<double> running;
  for (int hop = 1; hop <= hop_count; ++hop) {
    const auto factor =
        channel_attenuation(config.hop_sets[static_cast<std::size_t>(hop - 1)]);
    if (hop == 1) {
      running = factor;
    } else {
      for (std::size_t y = 0; y < running.size(); ++y) {
        running[y] *= factor[y];
      }
    }
    cumulative.push_back(running);

    HopSecurity sec;
    sec.hop = hop;
    sec.threshold = threshold;
    const BiasProfile profile =
        bias_profile(config.hop_sets[static_cast<std::size_t>(hop - 1)]);
    sec.beta_max = profile.beta_max;
    sec.certified = sec.beta_max <= threshold;
    double cum_max = 0.0;
    for (std::size_t y = 1; y < running.size(); ++y) {
      cum_max = std::max(cum_max, std::abs(running[y]));
    }
    sec.cumulative_beta_max = cum_max;
    report.hops.push_back(sec);
  }
  report.composed_beta_max = report.hops.back().cumulative_beta_max;

  // Idealized m-fold map: the dependent key's marginal law is the XOR
  // convolution of the wire draws, so its attenuation is the composed wire
  // attenuation; composing it on top squares every factor.
  std::vector<double> idealized = cumulative.back();
  for (auto& f : idealized) {
    f *= f;
  }
  double ideal_max = 0.0;
  for (std::size_t y = 1; y < idealized.size(); ++y) {
    ideal_max = std::max(ideal_max, std::abs(idealized[y]));
  }
  report.idealized_m_fold_beta_max = ideal_max;

  const DensityMatrix mixed = DensityMatrix::maximally_mixed(config.n);
  SeededRng root(seed);
  for (int t = 0; t < trials; ++t) {
    SeededRng rng = root.fork(static_cast<std::uint64_t>(t));
    const DensityMatrix rho = density_from_pure(random_pure_state(config.n, rng));
    for (int hop = 1; hop <= hop_count; ++hop) {
      const DensityMatrix out =
          apply_attenuation(rho, cumulative[static_cast<std::size_t>(hop - 1)]);
      const double distance = trace_norm(out.entries - mixed.entries);
      auto& sec = report.hops[static_cast<std::size_t>(hop - 1)];
      sec.measured_max_distance = std::max(sec.measured_max_distance, distance);
    }
    const DensityMatrix ideal_out = apply_attenuation(rho, idealized);
    report.idealized_m_fold_max_distance =
        std::max(report.idealized_m_fold_max_distance,
                 trace_norm(ideal_out.entries - mixed.entries));
  }
  report.composed_max_distance =
      report.hops.empty() ? 0.0 : report.hops.back().measured_max_distance;

  report.chi = holevo_information_basis(config.wire_channel(hop_count), base);
  const HolevoBound bound =
      holevo_bound(static_cast<int>(d), config.epsilon, base);
  report.chi_bound = bound.value;
  report.chi_bound_small_de = bound.small_de;
  report.pass = report.composed_max_distance <= config.epsilon + 1e-12 &&
                report.chi <= report.chi_bound + 1e-9;
  return report;
}

}  // namespace qst
