#pragma once

#include <Eigen/Dense>
#include <compare>
#include <complex>
#include <string>
#include <string_view>

#include "qst/bits.hpp"
#include "qst/config.hpp"
#include "qst/state.hpp"

namespace qst {

/// A 2n-bit string (a, b) naming the n-qubit Pauli word X^a Z^b. The zero
/// key names the identity. Text form is the lowercase hex of a||b (a first).
struct PauliKey {
  int n;
  Bits a;
  Bits b;

  PauliKey(int n, Bits a, Bits b);
  static PauliKey identity(int n) { return PauliKey(n, 0, 0); }

  bool is_identity() const { return a == 0 && b == 0; }
  /// The 2n-bit string a||b as an integer (a in the high n bits).
  Bits packed() const { return (a << n) | b; }
  static PauliKey from_packed(int n, Bits packed);

  std::string to_hex() const;
  static PauliKey from_hex(int n, std::string_view text);

  friend bool operator==(const PauliKey&, const PauliKey&) = default;
};

/// XOR of the (a, b) strings; the key part of any Pauli product.
PauliKey operator^(const PauliKey& x, const PauliKey& y);

/// One of {+1, +i, -1, -i}, kept exact as a quarter-turn count.
class Phase {
 public:
  constexpr explicit Phase(int quarter_turns = 0)
      : k_(((quarter_turns % 4) + 4) % 4) {}

  static constexpr Phase one() { return Phase(0); }
  static constexpr Phase i() { return Phase(1); }
  static constexpr Phase minus_one() { return Phase(2); }
  static constexpr Phase minus_i() { return Phase(3); }

  int quarter_turns() const { return k_; }
  bool is_real() const { return (k_ & 1) == 0; }
  Complex value() const {
    static constexpr double re[4] = {1.0, 0.0, -1.0, 0.0};
    static constexpr double im[4] = {0.0, 1.0, 0.0, -1.0};
    return {re[k_], im[k_]};
  }

  friend Phase operator*(Phase x, Phase y) { return Phase(x.k_ + y.k_); }
  friend bool operator==(Phase, Phase) = default;

 private:
  int k_;
};

/// phase * X^a Z^b, phase tracked exactly. The canonical operator of Eq.-(4)
/// form carries the extra i^(a*b) making it Hermitian and involutory;
/// `of(key)` is the bare word with phase +1.
struct PhasedPauli {
  PauliKey key;
  Phase phase;

  static PhasedPauli of(PauliKey k) { return {k, Phase::one()}; }
  static PhasedPauli canonical(PauliKey k) {
    const int turns = star(k.a, k.b);
    return {k, Phase(turns)};
  }

  friend bool operator==(const PhasedPauli&, const PhasedPauli&) = default;
};

/// Matrix product p.q with the exact phase: moving Z^b past X^a' contributes
/// (-1)^(b*a') per crossing.
PhasedPauli compose(const PhasedPauli& p, const PhasedPauli& q);

/// Sign of conjugation: X^u Z^v (X^a Z^b) Z^v X^u = sign * X^a Z^b,
/// sign = (-1)^(a*v + b*u).
int symplectic_sign(Bits u, Bits v, Bits a, Bits b);
int symplectic_sign(const PauliKey& conjugator, const PauliKey& target);

/// Canonical operator i^(a*b) X^a Z^b applied to a state: an O(2^n) index
/// permutation with sign flips, never a dense matrix.
PureState apply_key(const PureState& state, const PauliKey& key);

/// Dense 2^n x 2^n matrix of the canonical operator; n capped.
Eigen::MatrixXcd key_matrix(const PauliKey& key, int dense_cap = kDenseQubitCap);

}  // namespace qst
