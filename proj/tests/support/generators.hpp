#pragma once

// Seeded generators for property tests. std::mt19937_64 output is fixed by
// the standard, but the distributions are not, so only raw engine output is
// used to keep cases identical across platforms.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "esgdoc/element.hpp"

namespace esgdoc::testing {

using Rng = std::mt19937_64;

inline std::uint64_t below(Rng& rng, std::uint64_t n) { return n ? rng() % n : 0; }
inline bool chance(Rng& rng, unsigned percent) { return below(rng, 100) < percent; }

Element make_text(ElementKind kind, std::string text, std::size_t ordinal, int page = 1);
Element make_table(const TableGrid& grid, std::size_t ordinal, int page = 1);
Element make_page_break(std::size_t ordinal, int page);
Element make_image(std::vector<std::uint8_t> bytes, std::size_t ordinal, int page = 1,
                   std::optional<std::string> alt_text = std::nullopt);

TableGrid simple_grid(const std::vector<std::vector<std::string>>& rows, int header_rows = 0);

// Words, occasional multi-byte characters and irregular whitespace, up to
// `max_len` code points.
std::string random_text(Rng& rng, std::size_t max_len);

// Mixed element sequence with consistent ids and pages.
std::vector<Element> random_elements(Rng& rng, std::size_t max_count, std::size_t max_text_len);

// Text full of the things cleaning targets: bullets, dashes, blank-line runs,
// soft wraps, hyphenated line breaks, tabs.
std::string random_dirty_text(Rng& rng);

}  // namespace esgdoc::testing
