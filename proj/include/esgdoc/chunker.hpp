#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "esgdoc/element.hpp"

namespace esgdoc {

struct CompositeChunk {
  std::string text;
  std::vector<std::string> element_ids;
  bool starts_with_title = false;
  std::optional<std::string> title_text;
  int page_start = 1;
  int page_end = 1;

  bool operator==(const CompositeChunk&) const = default;
};

struct TableChunk {
  std::string raw_text;
  std::string html;
  std::string element_id;
  int page = 1;

  bool operator==(const TableChunk&) const = default;
};

using Chunk = std::variant<CompositeChunk, TableChunk>;

inline constexpr const char* kElementSeparator = "\n\n";

// Sections keyed on titles. Tables become standalone chunks, page breaks only
// close sections when multipage_sections is false, oversize elements are split
// at whitespace, and short chunks merge forward when
// combine_text_under_n_chars > 0.
std::vector<Chunk> chunk_by_title(const std::vector<Element>& elements,
                                  const ChunkingConfig& cfg);

// Pieces of at most `limit` code points, cut at the last whitespace at or
// before the limit (or hard at the limit).
std::vector<std::string> split_oversize(const std::string& text,
                                        std::size_t limit);

// {"chunks":[...]} with a trailing LF.
std::string serialize_chunks(const std::vector<Chunk>& chunks);

}  // namespace esgdoc
