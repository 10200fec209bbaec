#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "qst/randomizer.hpp"
#include "qst/rng.hpp"
#include "qst/security.hpp"

using qst::Bits;
using qst::ChannelSpec;
using qst::DensityMatrix;
using qst::KeySet;
using qst::PauliKey;

namespace {

KeySet random_set(int n, std::size_t count, qst::SeededRng& rng) {
  std::vector<PauliKey> keys;
  keys.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    keys.push_back(PauliKey::from_packed(
        n, static_cast<Bits>(rng.below(std::uint64_t{1} << (2 * n)))));
  }
  return KeySet(n, std::move(keys));
}

DensityMatrix random_density(int n, std::uint64_t seed) {
  qst::SeededRng rng(seed);
  const auto psi = qst::random_pure_state(n, rng);
  Eigen::MatrixXcd m = 0.7 * (psi.amplitudes * psi.amplitudes.adjoint());
  qst::SeededRng rng2(seed + 1);
  const auto phi = qst::random_pure_state(n, rng2);
  m += 0.3 * (phi.amplitudes * phi.amplitudes.adjoint());
  return DensityMatrix(n, std::move(m));
}

// Conjugation-average reference using dense key matrices end to end.
DensityMatrix channel_by_matrices(const KeySet& e, const DensityMatrix& rho) {
  const Eigen::Index d = rho.entries.rows();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& key : e.keys) {
    const Eigen::MatrixXcd p = qst::key_matrix(key);
    acc += p * rho.entries * p.adjoint();
  }
  return DensityMatrix(rho.n, acc / static_cast<double>(e.size()));
}

}  // namespace

TEST_CASE("KeySet construction: uniqueness flag, dimension checks") {
  const KeySet uniq(1, {PauliKey(1, 0, 0), PauliKey(1, 1, 0)});
  CHECK(uniq.unique);
  const KeySet multi(1, {PauliKey(1, 1, 0), PauliKey(1, 1, 0)});
  CHECK_FALSE(multi.unique);
  CHECK(multi.size() == 2);
  CHECK_THROWS_AS(KeySet(1, {}), std::invalid_argument);
  CHECK_THROWS_AS(KeySet(1, {PauliKey(2, 0, 0)}), std::invalid_argument);
  CHECK(KeySet::full(2).size() == 16);
  CHECK(KeySet::full(2).unique);
}

TEST_CASE("bias: full set, singleton, two-element example") {
  const KeySet full = KeySet::full(2);
  for (Bits y = 1; y < 16; ++y) {
    CHECK(qst::bias(full, y >> 2, y & 3) == 0.0);
  }
  CHECK(qst::bias(full, 0, 0) == 1.0);

  const KeySet single = KeySet::singleton(PauliKey(2, 2, 1));
  for (Bits y = 0; y < 16; ++y) {
    CHECK(qst::bias(single, y >> 2, y & 3) == 1.0);
  }

  // E = {(0,0), (0,1)} at n=1: bias 1 at (1,0), bias 0 at (0,1).
  const KeySet pair(1, {PauliKey(1, 0, 0), PauliKey(1, 0, 1)});
  CHECK(qst::bias(pair, 1, 0) == 1.0);
  CHECK(qst::bias(pair, 0, 1) == 0.0);

  CHECK_THROWS_AS(qst::bias(pair, 2, 0), std::invalid_argument);
}

TEST_CASE("bias_profile: transform equals enumeration equals pointwise bias") {
  qst::SeededRng rng(101);
  for (const int n : {1, 2, 3}) {
    for (int rep = 0; rep < 4; ++rep) {
      const KeySet e = random_set(n, 3 + rng.below(40), rng);
      const auto fast = qst::bias_profile(e);
      const auto direct = qst::bias_profile_direct(e);
      REQUIRE(fast.beta.size() == direct.beta.size());
      for (std::size_t y = 0; y < fast.beta.size(); ++y) {
        CHECK(fast.beta[y] == direct.beta[y]);  // both exact integer sums
        const Bits a = static_cast<Bits>(y) >> n;
        const Bits b = static_cast<Bits>(y) & qst::bit_mask(n);
        CHECK(fast.beta[y] == doctest::Approx(qst::bias(e, a, b)).epsilon(1e-12));
        CHECK(fast.beta[y] <= 1.0 + 1e-15);
      }
      CHECK(fast.beta[0] == 1.0);
      CHECK(fast.beta_max == direct.beta_max);
    }
  }
  CHECK_THROWS_AS(qst::bias_profile(KeySet::full(2), qst::kernels::Exec::parallel, 2),
                  std::invalid_argument);
}

TEST_CASE("channel attenuation: swapped pairing against symplectic signs") {
  qst::SeededRng rng(103);
  for (const int n : {1, 2}) {
    const KeySet e = random_set(n, 9, rng);
    const auto factor = qst::channel_attenuation(e);
    const Bits limit = Bits{1} << n;
    for (Bits a = 0; a < limit; ++a) {
      for (Bits b = 0; b < limit; ++b) {
        double expect = 0.0;
        for (const auto& key : e.keys) {
          expect += qst::symplectic_sign(key.a, key.b, a, b);
        }
        expect /= static_cast<double>(e.size());
        CHECK(factor[(a << n) | b] == doctest::Approx(expect).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("channel_apply_average: full set, identity set, fixed point") {
  qst::SeededRng rng(107);
  for (const int n : {1, 2, 3}) {
    const auto rho = random_density(n, 200 + n);
    const auto mixed = DensityMatrix::maximally_mixed(n);

    const auto randomized = qst::channel_apply_average(KeySet::full(n), rho);
    CHECK((randomized.entries - mixed.entries).cwiseAbs().maxCoeff() < 1e-12);

    const auto identity = qst::channel_apply_average(
        KeySet::singleton(PauliKey::identity(n)), rho);
    CHECK((identity.entries - rho.entries).cwiseAbs().maxCoeff() < 1e-12);

    const auto fixed = qst::channel_apply_average(random_set(n, 7, rng), mixed);
    CHECK((fixed.entries - mixed.entries).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(
      qst::channel_apply_average(KeySet::full(2), random_density(1, 7)),
      std::invalid_argument);
}

TEST_CASE("channel routes agree: average, spectral, dense-matrix reference") {
  qst::SeededRng rng(109);
  int checked = 0;
  while (checked < 50) {
    const int n = 1 + static_cast<int>(rng.below(3));
    const KeySet e = random_set(n, 2 + rng.below(30), rng);
    const auto rho = random_density(n, 300 + checked);
    const auto avg = qst::channel_apply_average(e, rho);
    const auto spec = qst::channel_apply_spectral(e, rho);
    CHECK((avg.entries - spec.entries).cwiseAbs().maxCoeff() < 1e-12);
    if (n <= 2) {
      const auto dense = channel_by_matrices(e, rho);
      CHECK((avg.entries - dense.entries).cwiseAbs().maxCoeff() < 1e-12);
    }
    avg.validate();
    spec.validate();
    ++checked;
  }
}

TEST_CASE("spectral route on a singleton is conjugation by that Pauli") {
  qst::SeededRng rng(113);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 1 + static_cast<int>(rng.below(2));
    const PauliKey key = PauliKey::from_packed(
        n, static_cast<Bits>(rng.below(std::uint64_t{1} << (2 * n))));
    const auto rho = random_density(n, 400 + rep);
    const auto out = qst::channel_apply_spectral(KeySet::singleton(key), rho);
    const Eigen::MatrixXcd p = qst::key_matrix(key);
    const Eigen::MatrixXcd expect = p * rho.entries * p.adjoint();
    CHECK((out.entries - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("compose_apply: single hop, singleton hops, sequential equality") {
  qst::SeededRng rng(127);
  const auto rho = random_density(2, 500);

  const KeySet e = random_set(2, 11, rng);
  const auto one_hop = qst::compose_apply(ChannelSpec({e}), rho);
  const auto direct = qst::channel_apply_average(e, rho);
  CHECK((one_hop.entries - direct.entries).cwiseAbs().maxCoeff() < 1e-12);

  const PauliKey k1 = PauliKey(2, 1, 2);
  const PauliKey k2 = PauliKey(2, 3, 1);
  const auto conj = qst::compose_apply(
      ChannelSpec({KeySet::singleton(k1), KeySet::singleton(k2)}), rho);
  const auto combined = qst::compose(qst::PhasedPauli::of(k2), qst::PhasedPauli::of(k1));
  const Eigen::MatrixXcd p = qst::key_matrix(combined.key);
  const Eigen::MatrixXcd expect = p * rho.entries * p.adjoint();
  CHECK((conj.entries - expect).cwiseAbs().maxCoeff() < 1e-12);

  // Composition = sequential application of each hop, any route.
  const KeySet e2 = random_set(2, 5, rng);
  const KeySet e3 = random_set(2, 17, rng);
  const auto composed = qst::compose_apply(ChannelSpec({e, e2, e3}), rho);
  auto sequential = qst::channel_apply_average(e, rho);
  sequential = qst::channel_apply_average(e2, sequential);
  sequential = qst::channel_apply_average(e3, sequential);
  CHECK((composed.entries - sequential.entries).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(ChannelSpec({}), std::invalid_argument);
  CHECK_THROWS_AS(ChannelSpec({e, KeySet::full(1)}), std::invalid_argument);
}

TEST_CASE("composed signed bias is the product of per-hop signed biases") {
  qst::SeededRng rng(131);
  const int n = 2;
  std::vector<KeySet> hops;
  for (int h = 0; h < 3; ++h) {
    hops.push_back(random_set(n, 4 + rng.below(12), rng));
  }
  const ChannelSpec spec(hops);
  const auto composed = qst::composed_attenuation(spec);

  // Reference: per-hop signed sums by direct enumeration, multiplied.
  const Bits limit = Bits{1} << n;
  for (Bits a = 0; a < limit; ++a) {
    for (Bits b = 0; b < limit; ++b) {
      double product = 1.0;
      for (const auto& hop : hops) {
        double sum = 0.0;
        for (const auto& key : hop.keys) {
          sum += qst::symplectic_sign(key.a, key.b, a, b);
        }
        product *= sum / static_cast<double>(hop.size());
      }
      CHECK(composed[(a << n) | b] == doctest::Approx(product).epsilon(1e-12));
    }
  }
}

TEST_CASE("dn_key_length: paper values and range errors") {
  CHECK(qst::dn_key_length(8, 0.25) == 16);
  CHECK(qst::dn_key_length(4, 1.0) == 8);
  CHECK(qst::dn_key_length(2, 1.0) == 6);
  CHECK(qst::dn_key_length(4, 0.5) == 10);
  CHECK(qst::dn_key_length(4, 0.8) == 9);
  CHECK_THROWS_AS(qst::dn_key_length(4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(qst::dn_key_length(4, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(qst::dn_key_length(0, 0.5), std::invalid_argument);
}

TEST_CASE("per-hop threshold formula") {
  CHECK(qst::per_hop_threshold(4, 0.8, 3) ==
        doctest::Approx(std::pow(0.8, 1.0 / 3.0) * std::exp2(-4.0 / 6.0))
            .epsilon(1e-15));
  CHECK_THROWS_AS(qst::per_hop_threshold(4, 0.8, 1), std::invalid_argument);
}

TEST_CASE("sample_and_certify: n=4 epsilon=0.8 certifies within 50 retries") {
  const auto result = qst::sample_and_certify(4, 0.8, 20250809, 50);
  REQUIRE(result.certified);
  REQUIRE(result.set.has_value());
  CHECK(result.set->size() == 512);  // 2^dn_key_length(4, 0.8) = 2^9
  CHECK(result.threshold == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(result.profile->beta_max <= result.threshold);
  CHECK(result.best_beta_max == result.profile->beta_max);

  // Determinism: the same seed reproduces the same key list.
  const auto again = qst::sample_and_certify(4, 0.8, 20250809, 50);
  REQUIRE(again.certified);
  CHECK(again.set->packed() == result.set->packed());
  CHECK(again.attempts == result.attempts);

  const auto different = qst::sample_and_certify(4, 0.8, 123, 50);
  REQUIRE(different.certified);
  CHECK(different.set->packed() != result.set->packed());
}

TEST_CASE("sample_and_certify: failure is reported, not thrown") {
  // A threshold below the 1/s granularity forces exact-zero character sums
  // at every nonzero point, which sampling essentially never achieves.
  const auto result = qst::sample_and_certify_threshold(2, 1e-4, 64, 5, 3);
  CHECK_FALSE(result.certified);
  CHECK_FALSE(result.set.has_value());
  CHECK(result.attempts == 4);
  CHECK(result.best_beta_max > 1e-4);
  CHECK(std::isfinite(result.best_beta_max));
}

TEST_CASE("verify_epsilon: full set is a perfect randomizer") {
  const auto report = qst::verify_epsilon(KeySet::full(2), 0.5, 40, 7);
  CHECK(report.beta_max == 0.0);
  CHECK(report.epsilon_implied == 0.0);
  CHECK(report.analytic_certified);
  CHECK(report.max_trace_distance < 1e-12);
  CHECK(report.chain_holds);
  CHECK(report.monte_carlo_within_epsilon);
  CHECK(report.pass);
}

TEST_CASE("verify_epsilon: certified set satisfies every bound on trial states") {
  const auto certified = qst::sample_and_certify(4, 0.8, 31337, 50);
  REQUIRE(certified.certified);
  const auto report = qst::verify_epsilon(*certified.set, 0.8, 100, 99);
  CHECK(report.analytic_certified);
  CHECK(report.chain_holds);
  CHECK(report.frobenius_concentration_holds);
  CHECK(report.max_trace_distance <= 0.8);
  CHECK(report.max_frobenius_sq <= report.frobenius_sq_bound + 1e-12);
  CHECK(report.pass);
}

TEST_CASE("channel outputs are valid density matrices") {
  qst::SeededRng rng(137);
  for (int rep = 0; rep < 8; ++rep) {
    const int n = 1 + static_cast<int>(rng.below(3));
    const KeySet e = random_set(n, 1 + rng.below(20), rng);
    const auto out = qst::channel_apply_spectral(e, random_density(n, 600 + rep));
    out.validate();
    CHECK(std::abs(out.entries.trace().real() - 1.0) < 1e-12);
  }
}
