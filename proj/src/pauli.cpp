#include "qst/pauli.hpp"

#include <stdexcept>

namespace qst {

PauliKey::PauliKey(int n_, Bits a_, Bits b_) : n(n_), a(a_), b(b_) {
  if (n < 1 || n > 15) {
    throw std::invalid_argument("PauliKey: qubit count outside [1, 15]");
  }
  if ((a & ~bit_mask(n)) != 0 || (b & ~bit_mask(n)) != 0) {
    throw std::invalid_argument("PauliKey: string wider than n bits");
  }
}

PauliKey PauliKey::from_packed(int n, Bits packed) {
  return PauliKey(n, packed >> n, packed & bit_mask(n));
}

std::string PauliKey::to_hex() const { return qst::to_hex(packed(), 2 * n); }

PauliKey PauliKey::from_hex(int n, std::string_view text) {
  if (n < 1 || n > 15) {
    throw std::invalid_argument("PauliKey: qubit count outside [1, 15]");
  }
  if (text.size() != static_cast<std::size_t>(hex_width(2 * n))) {
    throw std::invalid_argument("PauliKey: hex width != ceil(2n/4)");
  }
  const auto packed = qst::from_hex(text, 2 * n);
  return from_packed(n, static_cast<Bits>(packed));
}

PauliKey operator^(const PauliKey& x, const PauliKey& y) {
  if (x.n != y.n) {
    throw std::invalid_argument("PauliKey xor: dimension mismatch");
  }
  return PauliKey(x.n, x.a ^ y.a, x.b ^ y.b);
}

PhasedPauli compose(const PhasedPauli& p, const PhasedPauli& q) {
  if (p.key.n != q.key.n) {
    throw std::invalid_argument("compose: dimension mismatch");
  }
  // X^ap Z^bp X^aq Z^bq = (-1)^(bp*aq) X^(ap^aq) Z^(bp^bq)
  const int flips = star(p.key.b, q.key.a);
  return {p.key ^ q.key, p.phase * q.phase * Phase(2 * flips)};
}

int symplectic_sign(Bits u, Bits v, Bits a, Bits b) {
  return ((star(a, v) ^ star(b, u)) != 0) ? -1 : 1;
}

int symplectic_sign(const PauliKey& conjugator, const PauliKey& target) {
  if (conjugator.n != target.n) {
    throw std::invalid_argument("symplectic_sign: dimension mismatch");
  }
  return symplectic_sign(conjugator.a, conjugator.b, target.a, target.b);
}

PureState apply_key(const PureState& state, const PauliKey& key) {
  if (state.n != key.n) {
    throw std::invalid_argument("apply_key: dimension mismatch");
  }
  const std::int64_t d = std::int64_t{1} << key.n;
  const Complex global = PhasedPauli::canonical(key).phase.value();
  Eigen::VectorXcd out(d);
  const Bits a = key.a;
  const Bits b = key.b;
  // out[i] = i^(a*b) (-1)^(b*(i^a)) in[i^a]
#pragma omp parallel for schedule(static) if (d >= 4096)
  for (std::int64_t i = 0; i < d; ++i) {
    const std::int64_t src = i ^ a;
    const double sign = parity_sign(b, static_cast<Bits>(src));
    out[i] = global * sign * state.amplitudes[src];
  }
  return PureState(state.n, std::move(out));
}

Eigen::MatrixXcd key_matrix(const PauliKey& key, int dense_cap) {
  if (key.n > dense_cap) {
    throw std::invalid_argument("key_matrix: n beyond dense cap");
  }
  const std::int64_t d = std::int64_t{1} << key.n;
  const Complex global = PhasedPauli::canonical(key).phase.value();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (std::int64_t j = 0; j < d; ++j) {
    const double sign = parity_sign(key.b, static_cast<Bits>(j));
    m(j ^ key.a, j) = global * sign;
  }
  return m;
}

}  // namespace qst
