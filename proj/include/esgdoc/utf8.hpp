#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

// Minimal UTF-8 helpers. Character counts throughout the library are
// Unicode code points.
namespace esgdoc::utf8 {

// Offset of the first invalid byte, or nullopt when `s` is well-formed.
std::optional<std::size_t> find_invalid(std::string_view s);

// Throws EncodingError when `s` is not well-formed UTF-8.
void require_valid(std::string_view s);

std::size_t length(std::string_view s);

// Byte offset of the code point with index `n` (or s.size() when n >= length).
std::size_t byte_offset(std::string_view s, std::size_t n);

// Decodes the code point starting at `pos` and advances `pos` past it.
// Malformed input yields U+FFFD and advances one byte.
char32_t decode(std::string_view s, std::size_t& pos);

void append(std::string& out, char32_t cp);

// ASCII whitespace: space, \t, \n, \v, \f, \r.
inline bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\v' || c == U'\f' ||
         c == U'\r';
}

inline bool is_blank(char32_t c) { return c == U' ' || c == U'\t'; }

bool is_alpha(char32_t c);

}  // namespace esgdoc::utf8
