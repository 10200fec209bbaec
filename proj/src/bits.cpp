#include "qst/bits.hpp"

namespace qst {

std::string to_hex(std::uint64_t value, int total_bits) {
  if (total_bits <= 0 || total_bits > 64) {
    throw std::invalid_argument("to_hex: bad width");
  }
  const int width = hex_width(total_bits);
  std::string out(static_cast<std::size_t>(width), '0');
  static constexpr char kDigits[] = "0123456789abcdef";
  for (int i = width - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::uint64_t from_hex(std::string_view text, int total_bits) {
  if (text.empty() || text.size() > 16) {
    throw std::invalid_argument("from_hex: bad length");
  }
  std::uint64_t value = 0;
  for (const char c : text) {
    int digit;
    if (c >= '0' && c <= '9') {
      digit = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      digit = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      digit = c - 'A' + 10;
    } else {
      throw std::invalid_argument("from_hex: invalid character");
    }
    value = (value << 4) | static_cast<std::uint64_t>(digit);
  }
  if (total_bits < 64 && value >= (std::uint64_t{1} << total_bits)) {
    throw std::invalid_argument("from_hex: value exceeds width");
  }
  return value;
}

}  // namespace qst
