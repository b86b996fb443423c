#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rspdc {

/// 12 significant digits, uppercase exponent ("1.23456789012E-03").
/// Used for every CSV number so repeated runs are byte-identical.
std::string format_fixed12(double value);

/// Rounds to 12 significant digits (the value JSON files carry).
double round12(double value);

/// 64-bit FNV-1a digest of a byte string, rendered as 16 hex digits.
std::string digest_hex(std::string_view bytes);
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace rspdc
