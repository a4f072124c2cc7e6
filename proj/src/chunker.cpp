#include "esgdoc/chunker.hpp"

#include <json.hpp>
#include <unordered_set>

#include "esgdoc/utf8.hpp"

namespace esgdoc {

namespace {

bool is_blank_text(const std::string& text) {
  return text.find_first_not_of(" \t\n\r\f\v") == std::string::npos;
}

std::string encode(std::u32string_view s) {
  std::string out;
  for (char32_t c : s) utf8::append(out, c);
  return out;
}

// Section under construction.
class OpenSection {
 public:
  bool empty() const { return ids_.empty(); }
  std::size_t length() const { return length_; }

  void add(const Element& el, std::size_t el_length) {
    if (!empty()) {
      text_ += kElementSeparator;
      length_ += 2;
    } else {
      page_start_ = el.page();
      title_ = el.kind == ElementKind::Title;
      first_text_ = el.text;
    }
    text_ += el.text;
    length_ += el_length;
    ids_.push_back(el.id());
    page_end_ = el.page();
  }

  CompositeChunk take() {
    CompositeChunk chunk;
    chunk.starts_with_title = title_;
    if (title_) chunk.title_text = std::move(first_text_);
    chunk.text = std::move(text_);
    chunk.element_ids = std::move(ids_);
    chunk.page_start = page_start_;
    chunk.page_end = page_end_;
    *this = OpenSection{};
    return chunk;
  }

 private:
  std::string text_;
  std::string first_text_;
  std::vector<std::string> ids_;
  std::size_t length_ = 0;
  bool title_ = false;
  int page_start_ = 1;
  int page_end_ = 1;
};

// `next_led_by_title` covers the untitled pieces of a split oversize title.
bool can_merge(const CompositeChunk& small, const CompositeChunk& next, bool next_led_by_title,
               const ChunkingConfig& cfg) {
  if (utf8::length(small.text) >= cfg.combine_text_under_n_chars) return false;
  if (next.starts_with_title || next_led_by_title) return false;
  if (!cfg.multipage_sections && small.page_end != next.page_start) return false;
  return utf8::length(small.text) + 2 + utf8::length(next.text) <= cfg.max_characters;
}

}  // namespace

std::vector<std::string> split_oversize(const std::string& text, std::size_t limit) {
  std::u32string s;
  for (std::size_t pos = 0; pos < text.size();) s.push_back(utf8::decode(text, pos));
  std::vector<std::string> pieces;
  std::u32string_view rest(s);
  while (rest.size() > limit) {
    std::size_t cut = 0;
    for (std::size_t i = std::min(limit, rest.size() - 1); i >= 1; --i) {
      if (utf8::is_space(rest[i])) {
        cut = i;
        break;
      }
    }
    std::u32string_view piece = cut ? rest.substr(0, cut) : rest.substr(0, limit);
    rest.remove_prefix(cut ? cut + 1 : limit);
    while (!piece.empty() && utf8::is_space(piece.back())) piece.remove_suffix(1);
    while (!rest.empty() && utf8::is_space(rest.front())) rest.remove_prefix(1);
    if (!piece.empty()) pieces.push_back(encode(piece));
  }
  if (!rest.empty()) pieces.push_back(encode(rest));
  return pieces;
}

std::vector<Chunk> chunk_by_title(const std::vector<Element>& elements,
                                  const ChunkingConfig& cfg) {
  const std::size_t hard = cfg.max_characters;
  const std::size_t soft = std::min(effective_soft_limit(cfg), hard);
  std::vector<Chunk> chunks;
  std::unordered_set<std::string> title_ids;
  OpenSection open;
  auto close = [&] {
    if (!open.empty()) chunks.emplace_back(open.take());
  };

  for (const auto& el : elements) {
    switch (el.kind) {
      case ElementKind::Header:
      case ElementKind::Footer:
      case ElementKind::Image:
        continue;
      case ElementKind::PageBreak:
        if (!cfg.multipage_sections) close();
        continue;
      case ElementKind::Table:
        close();
        chunks.emplace_back(TableChunk{el.text, el.metadata.text_as_html.value_or(""),
                                       el.id(), el.page()});
        continue;
      default:
        break;
    }
    if (is_blank_text(el.text)) continue;
    if (el.kind == ElementKind::Title) title_ids.insert(el.id());
    const std::size_t length = utf8::length(el.text);
    if (length > hard) {
      close();
      for (auto& piece : split_oversize(el.text, hard)) {
        chunks.emplace_back(CompositeChunk{std::move(piece), {el.id()}, false,
                                           std::nullopt, el.page(), el.page()});
      }
      continue;
    }
    if (el.kind == ElementKind::Title) {
      close();
    } else if (!open.empty() && open.length() + 2 + length > soft) {
      close();
    }
    open.add(el, length);
  }
  close();

  if (cfg.combine_text_under_n_chars == 0) return chunks;
  std::vector<Chunk> merged;
  for (auto& chunk : chunks) {
    auto* next = std::get_if<CompositeChunk>(&chunk);
    auto* prev = merged.empty() ? nullptr : std::get_if<CompositeChunk>(&merged.back());
    if (next && prev &&
        can_merge(*prev, *next, title_ids.count(next->element_ids.front()) > 0, cfg)) {
      prev->text += kElementSeparator;
      prev->text += next->text;
      for (auto& id : next->element_ids) {
        if (prev->element_ids.back() != id) prev->element_ids.push_back(std::move(id));
      }
      prev->page_end = next->page_end;
    } else {
      merged.push_back(std::move(chunk));
    }
  }
  return merged;
}

std::string serialize_chunks(const std::vector<Chunk>& chunks) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& chunk : chunks) {
    nlohmann::ordered_json j;
    if (const auto* c = std::get_if<CompositeChunk>(&chunk)) {
      j["type"] = "composite";
      if (c->starts_with_title) j["title"] = c->title_text.value_or("");
      j["text"] = c->text;
      j["element_ids"] = c->element_ids;
      j["pages"] = {c->page_start, c->page_end};
    } else {
      const auto& t = std::get<TableChunk>(chunk);
      j["type"] = "table";
      j["raw_text"] = t.raw_text;
      j["html"] = t.html;
      j["page"] = t.page;
      j["element_id"] = t.element_id;
    }
    arr.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["chunks"] = std::move(arr);
  return doc.dump() + "\n";
}

}  // namespace esgdoc
