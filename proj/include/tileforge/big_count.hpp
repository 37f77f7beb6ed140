#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tileforge {

/// Arbitrary-precision integer used for every count in the library.
using BigCount = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigCount& v) { return v.str(); }

inline BigCount from_decimal(const std::string& s) { return BigCount(s); }

/// Exact 2^exponent, kept symbolic until a decimal value is needed.
struct PowerOfTwo {
  std::int64_t exponent = 0;

  BigCount value() const {
    BigCount one = 1;
    return one << static_cast<unsigned>(exponent);
  }

  friend auto operator<=>(const PowerOfTwo&, const PowerOfTwo&) = default;
};

/// Returns e when v == 2^e, otherwise nothing.
inline std::optional<std::int64_t> exact_log2(const BigCount& v) {
  if (v <= 0) return std::nullopt;
  const auto msb = boost::multiprecision::msb(v);
  const auto lsb = boost::multiprecision::lsb(v);
  if (msb != lsb) return std::nullopt;
  return static_cast<std::int64_t>(msb);
}

}  // namespace tileforge
