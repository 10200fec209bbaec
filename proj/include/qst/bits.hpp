#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qst {

// An n-bit string stored in the low n bits of a word. Bit j of the string
// refers to qubit j, and qubit 0 is the most significant of the n bits, so
// qubit j sits at word bit (n - 1 - j). Amplitude indices use the same
// layout, which makes X-part bit flips a plain XOR on the index.
using Bits = std::uint32_t;

inline Bits bit_mask(int n) { return n >= 32 ? ~Bits{0} : (Bits{1} << n) - 1; }

// a*b = sum_j a_j b_j mod 2, the standard inner product on Z_2^n.
inline int star(Bits a, Bits b) { return std::popcount(a & b) & 1; }

// (-1)^(a*b) as an integer sign.
inline int parity_sign(Bits a, Bits b) { return star(a, b) ? -1 : 1; }

inline int hex_width(int total_bits) { return (total_bits + 3) / 4; }

// Lowercase hex of a `total_bits`-wide string, zero padded so the most
// significant bit (qubit 0 of the leading substring) always appears.
std::string to_hex(std::uint64_t value, int total_bits);

// Inverse of to_hex. Rejects non-hex characters and values that do not fit
// in `total_bits`.
std::uint64_t from_hex(std::string_view text, int total_bits);

}  // namespace qst
