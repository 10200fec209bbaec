#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qst/bits.hpp"

// Data-parallel inner loops, each with a serial twin. The parallel variants
// are loop-order identical to the serial ones, so results match bit for bit
// at any thread count: the Walsh-Hadamard stages touch disjoint index pairs,
// and the enumeration/conjugation kernels keep a fixed summation order per
// output element.
namespace qst::kernels {

enum class Exec { serial, parallel };

// In-place Walsh-Hadamard transform; length must be a power of two.
// Unnormalized: applying it twice multiplies by the length.
void wht(std::span<std::int64_t> v, Exec exec = Exec::parallel);
void wht(std::span<double> v, Exec exec = Exec::parallel);
void wht(std::span<std::complex<double>> v, Exec exec = Exec::parallel);

// Direct character-sum enumeration over packed 2n-bit keys:
//   out[y] = sum_k (-1)^popcount(keys[k] & y),  y in [0, 2^bits).
// This is the reference route; the production route runs wht() over the
// multiplicity vector of the key set.
std::vector<std::int64_t> character_sums_direct(std::span<const Bits> keys,
                                                int bits,
                                                Exec exec = Exec::parallel);

// Multiplicity vector of a packed key multiset over [0, 2^bits).
std::vector<std::int64_t> multiplicity_vector(std::span<const Bits> keys,
                                              int bits);

}  // namespace qst::kernels
