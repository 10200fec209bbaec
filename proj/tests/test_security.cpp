#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qst/randomizer.hpp"
#include "qst/rng.hpp"
#include "qst/security.hpp"

using qst::ChannelSpec;
using qst::DensityMatrix;
using qst::Ensemble;
using qst::KeySet;
using qst::LogBase;
using qst::PauliKey;

namespace {

ChannelSpec identity_channel(int n) {
  return ChannelSpec({KeySet::singleton(PauliKey::identity(n))});
}

Ensemble two_state_ensemble() {
  Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2);
  p0(0, 0) = 1.0;
  Eigen::MatrixXcd p1 = Eigen::MatrixXcd::Zero(2, 2);
  p1(1, 1) = 1.0;
  return Ensemble({DensityMatrix(1, p0), DensityMatrix(1, p1)}, {0.5, 0.5});
}

}  // namespace

TEST_CASE("Ensemble validation") {
  CHECK_THROWS_AS(Ensemble({}, {}), std::invalid_argument);
  Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2);
  p0(0, 0) = 1.0;
  CHECK_THROWS_AS(Ensemble({DensityMatrix(1, p0)}, {0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Ensemble({DensityMatrix(1, p0)}, {-1.0, 2.0}),
                  std::invalid_argument);
  const auto basis = Ensemble::computational_basis(2);
  CHECK(basis.states.size() == 4);
  CHECK(basis.probs[0] == 0.25);
}

TEST_CASE("holevo: complete randomizer erases the ensemble") {
  const auto chi = qst::holevo_information(Ensemble::computational_basis(2),
                                           ChannelSpec({KeySet::full(2)}));
  CHECK(std::abs(chi) <= 1e-9);
}

TEST_CASE("holevo: identity channel on an orthogonal pair carries one bit") {
  const double chi =
      qst::holevo_information(two_state_ensemble(), identity_channel(1));
  CHECK(chi == doctest::Approx(1.0).epsilon(1e-9));
  // Same value from the raw-ensemble overload.
  CHECK(qst::holevo_information(two_state_ensemble()) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("holevo: certified randomizer stays under log(1 + d eps)") {
  const auto certified = qst::sample_and_certify(4, 0.8, 271828, 50);
  REQUIRE(certified.certified);
  const ChannelSpec spec({*certified.set});
  for (const LogBase base : {LogBase::two, LogBase::e}) {
    const double chi =
        qst::holevo_information(Ensemble::computational_basis(4), spec, base);
    const auto bound = qst::holevo_bound(16, 0.8, base);
    CHECK(chi >= -1e-9);
    CHECK(chi <= bound.value + 1e-9);
    CHECK_FALSE(bound.small_de);  // d*eps = 12.8
  }
}

TEST_CASE("holevo basis fast path equals the dense path") {
  qst::SeededRng rng(211);
  std::vector<PauliKey> keys;
  for (int i = 0; i < 24; ++i) {
    keys.push_back(
        PauliKey::from_packed(3, static_cast<qst::Bits>(rng.below(64))));
  }
  const ChannelSpec spec({KeySet(3, std::move(keys))});
  const double fast = qst::holevo_information_basis(spec);
  const double dense =
      qst::holevo_information(Ensemble::computational_basis(3), spec);
  CHECK(fast == doctest::Approx(dense).epsilon(1e-9));

  // Also through a two-hop composition.
  std::vector<PauliKey> k1, k2;
  for (int i = 0; i < 9; ++i) {
    k1.push_back(PauliKey::from_packed(2, static_cast<qst::Bits>(rng.below(16))));
    k2.push_back(PauliKey::from_packed(2, static_cast<qst::Bits>(rng.below(16))));
  }
  const ChannelSpec chain({KeySet(2, std::move(k1)), KeySet(2, std::move(k2))});
  CHECK(qst::holevo_information_basis(chain) ==
        doctest::Approx(qst::holevo_information(
                            Ensemble::computational_basis(2), chain))
            .epsilon(1e-9));

  CHECK(qst::holevo_information_basis(ChannelSpec({KeySet::full(2)})) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(qst::holevo_information_basis(identity_channel(2)) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("holevo is invariant under ensemble relabeling") {
  const auto certified = qst::sample_and_certify(2, 1.0, 5, 50);
  REQUIRE(certified.certified);
  const ChannelSpec spec({*certified.set});
  auto ens = Ensemble::computational_basis(2);
  const double chi = qst::holevo_information(ens, spec);
  std::reverse(ens.states.begin(), ens.states.end());
  const double chi_reversed = qst::holevo_information(ens, spec);
  CHECK(chi == doctest::Approx(chi_reversed).epsilon(1e-10));
}

TEST_CASE("holevo never increases when a certified randomizer replaces identity") {
  const auto certified = qst::sample_and_certify(2, 0.9, 7, 50);
  REQUIRE(certified.certified);
  const ChannelSpec spec({*certified.set});
  qst::SeededRng rng(223);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<DensityMatrix> states;
    for (int i = 0; i < 3; ++i) {
      qst::SeededRng sub = rng.fork(rep * 8 + i);
      states.push_back(qst::density_from_pure(qst::random_pure_state(2, sub)));
    }
    const auto ens = Ensemble::uniform(std::move(states));
    const double raw = qst::holevo_information(ens, identity_channel(2));
    const double randomized = qst::holevo_information(ens, spec);
    CHECK(randomized <= raw + 1e-9);
  }
}

TEST_CASE("holevo_bound values and the natural-log comparison") {
  CHECK(qst::holevo_bound(4, 0.0).value == 0.0);
  // log2(1.8), evaluated independently.
  CHECK(qst::holevo_bound(4, 0.2).value ==
        doctest::Approx(0.84799690655495).epsilon(1e-12));
  CHECK(qst::holevo_bound(4, 0.2).small_de);
  CHECK_FALSE(qst::holevo_bound(4, 0.3).small_de);
  for (const double x : {0.1, 0.5, 0.9}) {
    const auto bound = qst::holevo_bound(1, x, LogBase::e);
    CHECK(bound.value < x);  // log(1+x) < x in natural log only
  }
  CHECK_THROWS_AS(qst::holevo_bound(0, 0.5), std::invalid_argument);
}

TEST_CASE("distinguishing advantage: extremes and the certified bound") {
  const auto rho0 = DensityMatrix(1, [] {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 1.0;
    return m;
  }());
  const auto rho1 = DensityMatrix(1, [] {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(1, 1) = 1.0;
    return m;
  }());

  CHECK(qst::distinguishing_advantage(ChannelSpec({KeySet::full(1)}), rho0,
                                      rho1) < 1e-12);
  CHECK(qst::distinguishing_advantage(identity_channel(1), rho0, rho1) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const auto certified = qst::sample_and_certify(4, 0.8, 314159, 50);
  REQUIRE(certified.certified);
  const ChannelSpec spec({*certified.set});
  const auto mixed = DensityMatrix::maximally_mixed(4);
  qst::SeededRng rng(227);
  for (int i = 0; i < 100; ++i) {
    qst::SeededRng r1 = rng.fork(2 * i);
    qst::SeededRng r2 = rng.fork(2 * i + 1);
    const auto a = qst::density_from_pure(qst::random_pure_state(4, r1));
    const auto b = qst::density_from_pure(qst::random_pure_state(4, r2));
    const double adv = qst::distinguishing_advantage(spec, a, b);
    const double adv_flipped = qst::distinguishing_advantage(spec, b, a);
    CHECK(adv == doctest::Approx(adv_flipped).epsilon(1e-12));
    CHECK(adv <= 0.8 + 1e-12);
    const double da = qst::trace_norm(qst::compose_apply(spec, a).entries -
                                      mixed.entries);
    const double db = qst::trace_norm(qst::compose_apply(spec, b).entries -
                                      mixed.entries);
    CHECK(adv <= 0.5 * (da + db) + 1e-12);
  }
}
