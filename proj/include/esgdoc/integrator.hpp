#pragma once

#include <string>
#include <vector>

#include "esgdoc/chunker.hpp"

namespace esgdoc {

struct Record {
  std::string title;
  std::string body;
  int page_start = 1;
  int page_end = 1;
  std::vector<std::size_t> source_chunk_indices;

  bool operator==(const Record&) const = default;
};

// Title–body records: each composite chunk opens an entry, a table's HTML
// joins the entry before it, and titled entries split at the first "\n\n".
std::vector<Record> integrate(const std::vector<Chunk>& chunks);

}  // namespace esgdoc
