#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sbc {

std::string to_hex(std::span<const std::uint8_t> bytes);

/// Parses an even-length hex string (either case). Throws ValidationError.
std::vector<std::uint8_t> parse_hex(std::string_view hex);

}  // namespace sbc
