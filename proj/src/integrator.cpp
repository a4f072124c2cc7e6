#include "esgdoc/integrator.hpp"

#include <algorithm>

namespace esgdoc {

namespace {

struct Entry {
  std::string text;
  bool titled = false;
  std::vector<std::size_t> chunk_indices;
  int page_start = 1;
  int page_end = 1;
};

}  // namespace

std::vector<Record> integrate(const std::vector<Chunk>& chunks) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    if (const auto* c = std::get_if<CompositeChunk>(&chunks[i])) {
      entries.push_back({c->text, c->starts_with_title, {i}, c->page_start, c->page_end});
      continue;
    }
    const auto& t = std::get<TableChunk>(chunks[i]);
    if (entries.empty()) {
      entries.push_back({t.html, false, {i}, t.page, t.page});
      continue;
    }
    auto& prev = entries.back();
    prev.text += kElementSeparator;
    prev.text += t.html;
    prev.chunk_indices.push_back(i);
    prev.page_start = std::min(prev.page_start, t.page);
    prev.page_end = std::max(prev.page_end, t.page);
  }

  std::vector<Record> records;
  records.reserve(entries.size());
  for (auto& e : entries) {
    Record r;
    r.page_start = e.page_start;
    r.page_end = e.page_end;
    r.source_chunk_indices = std::move(e.chunk_indices);
    if (e.titled) {
      const auto sep = e.text.find(kElementSeparator);
      r.title = e.text.substr(0, sep);
      if (sep != std::string::npos) r.body = e.text.substr(sep + 2);
      std::replace(r.title.begin(), r.title.end(), '\n', ' ');
    } else {
      r.body = std::move(e.text);
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace esgdoc
