#include "qst/kernels.hpp"

#include <stdexcept>

namespace qst::kernels {

namespace {

template <typename T>
void wht_impl(std::span<T> v, Exec exec) {
  const std::int64_t size = static_cast<std::int64_t>(v.size());
  if (size == 0 || (size & (size - 1)) != 0) {
    throw std::invalid_argument("wht: length must be a nonzero power of two");
  }
  for (std::int64_t half = 1; half < size; half <<= 1) {
    const std::int64_t stride = half << 1;
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
      for (std::int64_t block = 0; block < size / stride; ++block) {
        const std::int64_t base = block * stride;
        for (std::int64_t j = base; j < base + half; ++j) {
          const T x = v[j];
          const T y = v[j + half];
          v[j] = x + y;
          v[j + half] = x - y;
        }
      }
    } else {
      for (std::int64_t base = 0; base < size; base += stride) {
        for (std::int64_t j = base; j < base + half; ++j) {
          const T x = v[j];
          const T y = v[j + half];
          v[j] = x + y;
          v[j + half] = x - y;
        }
      }
    }
  }
}

}  // namespace

void wht(std::span<std::int64_t> v, Exec exec) { wht_impl(v, exec); }
void wht(std::span<double> v, Exec exec) { wht_impl(v, exec); }
void wht(std::span<std::complex<double>> v, Exec exec) { wht_impl(v, exec); }

std::vector<std::int64_t> character_sums_direct(std::span<const Bits> keys,
                                                int bits, Exec exec) {
  if (bits < 0 || bits > 30) {
    throw std::invalid_argument("character_sums_direct: bits out of range");
  }
  const std::int64_t points = std::int64_t{1} << bits;
  std::vector<std::int64_t> out(static_cast<std::size_t>(points));
  const std::int64_t nkeys = static_cast<std::int64_t>(keys.size());
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t y = 0; y < points; ++y) {
    std::int64_t acc = 0;
    const Bits point = static_cast<Bits>(y);
    for (std::int64_t k = 0; k < nkeys; ++k) {
      acc += (std::popcount(keys[k] & point) & 1) ? -1 : 1;
    }
    out[static_cast<std::size_t>(y)] = acc;
  }
  return out;
}

std::vector<std::int64_t> multiplicity_vector(std::span<const Bits> keys,
                                              int bits) {
  if (bits < 0 || bits > 30) {
    throw std::invalid_argument("multiplicity_vector: bits out of range");
  }
  std::vector<std::int64_t> mult(std::size_t{1} << bits, 0);
  for (const Bits k : keys) {
    if (k >= mult.size()) {
      throw std::invalid_argument("multiplicity_vector: key exceeds width");
    }
    ++mult[k];
  }
  return mult;
}

}  // namespace qst::kernels
