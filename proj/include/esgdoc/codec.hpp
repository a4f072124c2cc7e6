#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace esgdoc::codec {

// Standard alphabet, with padding.
std::string base64_encode(std::span<const std::uint8_t> bytes);
// nullopt on any character outside the alphabet or bad padding.
std::optional<std::vector<std::uint8_t>> base64_decode(std::string_view text);

std::string sha256_hex(std::span<const std::uint8_t> bytes);

}  // namespace esgdoc::codec
