#include "esgdoc/ingestion.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>

#include "esgdoc/element_json.hpp"
#include "esgdoc/errors.hpp"
#include "esgdoc/table.hpp"
#include "esgdoc/utf8.hpp"
#include "json_util.hpp"

namespace esgdoc {

using nlohmann::json;

std::optional<std::string> check_thresholds(const ClassifierThresholds& th) {
  if (!(th.header_band > 0 && th.header_band < 0.5)) return "header_band must lie in (0, 0.5)";
  if (!(th.footer_band > 0 && th.footer_band < 0.5)) return "footer_band must lie in (0, 0.5)";
  if (!(th.header_band + th.footer_band < 1)) return "header_band + footer_band must be < 1";
  if (th.title_max_words == 0) return "title_max_words must be positive";
  if (th.repeat_min_pages == 0) return "repeat_min_pages must be positive";
  return std::nullopt;
}

namespace {

std::optional<KindHint> parse_kind_hint(const std::string& name) {
  if (name == "text") return KindHint::Text;
  if (name == "table") return KindHint::Table;
  if (name == "image") return KindHint::Image;
  return std::nullopt;
}

LayoutBlock block_from_json(const json& j) {
  detail::require_object(j, "block");
  detail::reject_unknown(j, "block", {"page", "bbox", "font_size", "kind_hint",
                                      "text", "table", "image"});
  LayoutBlock b;
  b.page = detail::get_int(j, "page", "block");
  if (b.page < 1) throw Error("page must be positive");
  if (j.contains("bbox") && !j.at("bbox").is_null()) b.bbox = detail::get_bbox(j.at("bbox"));
  if (j.contains("font_size") && !j.at("font_size").is_null()) {
    b.font_size = detail::get_double(j, "font_size", "block");
    if (!(*b.font_size > 0)) throw Error("font_size must be positive");
  }
  if (j.contains("kind_hint") && !j.at("kind_hint").is_null()) {
    const auto name = detail::get_string(j, "kind_hint", "block");
    b.kind_hint = parse_kind_hint(name);
    if (!b.kind_hint) throw Error("unknown kind_hint \"" + name + "\"");
  }
  if (j.contains("text") && !j.at("text").is_null()) {
    b.text = detail::get_string(j, "text", "block");
  }
  if (j.contains("table") && !j.at("table").is_null()) {
    b.table = table_from_json(j.at("table"));
  }
  if (j.contains("image") && !j.at("image").is_null()) {
    b.image = image_from_json(j.at("image"));
  }
  if (!b.text && !b.table && !b.image) {
    throw Error("block has none of text, table, image");
  }
  if (b.table && b.kind_hint && *b.kind_hint != KindHint::Table) {
    throw Error("table payload requires kind_hint \"table\" or none");
  }
  if (b.image && b.kind_hint && *b.kind_hint != KindHint::Image) {
    throw Error("image payload requires kind_hint \"image\" or none");
  }
  return b;
}

std::string_view trim_view(std::string_view s) {
  const auto ws = " \t\n\r\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

// Whitespace-collapsed, trimmed text for repetition comparisons.
std::string normalize_band_text(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char c : trim_view(text)) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      pending_space = true;
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

bool is_text_block(const LayoutBlock& b) { return b.text && !b.table && !b.image; }

}  // namespace

std::vector<LayoutBlock> ingest_blocks(std::string_view raw) {
  utf8::require_valid(raw);
  const json doc = detail::parse_json(raw);
  try {
    detail::require_object(doc, "layout document");
    detail::reject_unknown(doc, "layout document", {"schema_version", "source", "blocks"});
    detail::check_schema_version(doc);
    if (doc.contains("source") && !doc.at("source").is_string()) {
      throw Error("source must be a string");
    }
    detail::get_array(doc, "blocks", "layout document");
  } catch (const UnsupportedVersionError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid layout document: ") + e.what(), 0);
  }
  std::vector<LayoutBlock> blocks;
  const auto& arr = doc.at("blocks");
  blocks.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    try {
      blocks.push_back(block_from_json(arr[i]));
    } catch (const Error& e) {
      throw ValidationError(i, e.what());
    }
  }
  return blocks;
}

std::vector<LayoutBlock> ingest_plaintext(std::string_view raw) {
  utf8::require_valid(raw);
  if (raw.substr(0, 3) == "\xEF\xBB\xBF") raw.remove_prefix(3);
  std::vector<LayoutBlock> blocks;
  int page = 1;
  std::string current;
  auto flush = [&] {
    const auto text = trim_view(current);
    if (!text.empty()) {
      LayoutBlock b;
      b.page = page;
      b.kind_hint = KindHint::Text;
      b.text = std::string(text);
      blocks.push_back(std::move(b));
    }
    current.clear();
  };
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    // Lines end at '\n' or '\f'; a form feed also starts a new page.
    const auto end = raw.find_first_of("\n\f", pos);
    auto line = raw.substr(pos, end == std::string_view::npos ? std::string_view::npos
                                                              : end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim_view(line).empty()) {
      flush();
    } else {
      if (!current.empty()) current += '\n';
      current += line;
    }
    if (end == std::string_view::npos) break;
    if (raw[end] == '\f') {
      flush();
      ++page;
    }
    pos = end + 1;
  }
  flush();
  return blocks;
}

std::vector<LayoutBlock> reading_order(std::vector<LayoutBlock> blocks) {
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const LayoutBlock& a, const LayoutBlock& b) { return a.page < b.page; });
  std::vector<LayoutBlock> out;
  out.reserve(blocks.size());
  auto page_begin = blocks.begin();
  while (page_begin != blocks.end()) {
    const int page = page_begin->page;
    auto page_end = std::find_if(page_begin, blocks.end(),
                                 [page](const LayoutBlock& b) { return b.page != page; });
    std::vector<LayoutBlock> placed;
    std::vector<LayoutBlock> unplaced;
    for (auto it = page_begin; it != page_end; ++it) {
      (it->bbox ? placed : unplaced).push_back(std::move(*it));
    }
    std::vector<double> starts;
    for (const auto& b : placed) starts.push_back(b.bbox->x0);
    std::sort(starts.begin(), starts.end());
    // Column index of every distinct x0: a gap wider than kColumnGap between
    // consecutive sorted x0 values opens the next column.
    std::map<double, int> column_of;
    int column = 0;
    for (std::size_t i = 0; i < starts.size(); ++i) {
      if (i > 0 && starts[i] - starts[i - 1] > kColumnGap) ++column;
      column_of[starts[i]] = column;
    }
    std::stable_sort(placed.begin(), placed.end(),
                     [&](const LayoutBlock& a, const LayoutBlock& b) {
                       const int ca = column_of[a.bbox->x0];
                       const int cb = column_of[b.bbox->x0];
                       if (ca != cb) return ca < cb;
                       if (a.bbox->y0 != b.bbox->y0) return a.bbox->y0 < b.bbox->y0;
                       return a.bbox->x0 < b.bbox->x0;
                     });
    for (auto& b : placed) out.push_back(std::move(b));
    for (auto& b : unplaced) out.push_back(std::move(b));
    page_begin = page_end;
  }
  return out;
}

std::string mask_digits(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool in_digits = false;
  for (char c : text) {
    const bool digit = c >= '0' && c <= '9';
    if (digit && !in_digits) out += '#';
    if (!digit) out += c;
    in_digits = digit;
  }
  return out;
}

bool is_page_number(std::string_view text) {
  static const std::regex kPageNumber(R"(^\s*(page\s+)?\d+(\s+of\s+\d+)?\s*$)",
                                      std::regex::icase);
  return std::regex_match(text.begin(), text.end(), kPageNumber);
}

std::vector<BandMark> detect_headers_footers(const std::vector<LayoutBlock>& blocks,
                                             const ClassifierThresholds& th) {
  std::vector<BandMark> band(blocks.size(), BandMark::Body);
  std::vector<std::string> keys(blocks.size());
  std::map<std::pair<BandMark, std::string>, std::set<int>> pages_with;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    if (!b.bbox || !is_text_block(b)) continue;
    if (b.bbox->y0 >= 0 && b.bbox->y1 <= th.header_band) {
      band[i] = BandMark::Header;
    } else if (b.bbox->y0 >= 1 - th.footer_band && b.bbox->y1 <= 1) {
      band[i] = BandMark::Footer;
    } else {
      continue;
    }
    keys[i] = normalize_band_text(mask_digits(*b.text));
    pages_with[{band[i], keys[i]}].insert(b.page);
  }
  std::vector<BandMark> marks(blocks.size(), BandMark::Body);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (band[i] == BandMark::Body) continue;
    const auto& pages = pages_with[{band[i], keys[i]}];
    const std::size_t other_pages = pages.size() - (pages.count(blocks[i].page) ? 1 : 0);
    if (other_pages >= th.repeat_min_pages || is_page_number(*blocks[i].text)) {
      marks[i] = band[i];
    }
  }
  return marks;
}

std::optional<double> body_font_size(const std::vector<LayoutBlock>& blocks) {
  std::vector<double> sizes;
  for (const auto& b : blocks) {
    if (is_text_block(b) && b.font_size) sizes.push_back(*b.font_size);
  }
  if (sizes.empty()) return std::nullopt;
  std::sort(sizes.begin(), sizes.end());
  const auto mid = sizes.size() / 2;
  return sizes.size() % 2 ? sizes[mid] : (sizes[mid - 1] + sizes[mid]) / 2;
}

namespace {

bool starts_list_item(std::string_view text) {
  std::size_t pos = 0;
  if (text.empty()) return false;
  const char32_t first = utf8::decode(text, pos);
  const bool next_is_space = pos >= text.size() || utf8::is_space(static_cast<unsigned char>(text[pos]));
  if (first == U'•' || first == U'●' || first == U'◦' || first == U'▪') return true;
  if ((first == U'–' || first == U'-' || first == U'*') && next_is_space) return true;
  static const std::regex kEnumerator(R"(^\d+\.\s)");
  return std::regex_search(text.begin(), text.end(), kEnumerator);
}

// Last code point, skipping trailing whitespace.
char32_t last_char(std::string_view text) {
  char32_t last = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t c = utf8::decode(text, pos);
    if (!utf8::is_space(c)) last = c;
  }
  return last;
}

// Last character, looking through closing quotes and brackets.
char32_t last_significant_char(std::string_view text) {
  std::u32string chars;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t c = utf8::decode(text, pos);
    if (!utf8::is_space(c)) chars.push_back(c);
  }
  while (!chars.empty()) {
    const char32_t c = chars.back();
    if (c == U'"' || c == U'\'' || c == U')' || c == U']' || c == U'”' || c == U'’') {
      chars.pop_back();
    } else {
      return c;
    }
  }
  return 0;
}

struct TextShape {
  std::size_t words = 0;
  std::size_t non_space = 0;
  std::size_t alpha = 0;
};

TextShape measure(std::string_view text) {
  TextShape shape;
  bool in_word = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t c = utf8::decode(text, pos);
    if (utf8::is_space(c)) {
      in_word = false;
      continue;
    }
    if (!in_word) ++shape.words;
    in_word = true;
    ++shape.non_space;
    if (utf8::is_alpha(c)) ++shape.alpha;
  }
  return shape;
}

bool is_clause_punct(char32_t c) {
  return c == U'.' || c == U',' || c == U';' || c == U':' || c == U'!' || c == U'?';
}

bool is_sentence_end(char32_t c) { return c == U'.' || c == U'!' || c == U'?'; }

}  // namespace

Element classify(const LayoutBlock& block, std::optional<double> body_font,
                 const ClassifierThresholds& th) {
  Element el;
  el.metadata.page = block.page;
  el.metadata.bbox = block.bbox;
  el.metadata.font_size = block.font_size;
  if (block.table) {
    el.kind = ElementKind::Table;
    el.table = *block.table;
    el.text = to_raw_text(*block.table);
    el.metadata.text_as_html = to_html(*block.table);
    return el;
  }
  if (block.image) {
    el.kind = ElementKind::Image;
    el.image = *block.image;
    return el;
  }
  el.text = block.text.value_or("");
  const auto text = trim_view(el.text);
  if (starts_list_item(text)) {
    el.kind = ElementKind::ListItem;
    return el;
  }
  const auto shape = measure(text);
  const bool shaped_like_title =
      !text.empty() && shape.words <= th.title_max_words &&
      static_cast<double>(shape.alpha) >=
          th.title_min_alpha_ratio * static_cast<double>(shape.non_space) &&
      !is_clause_punct(last_char(text));
  const bool large_font = !block.font_size || !body_font ||
                          *block.font_size >= th.title_font_ratio * *body_font;
  if (shaped_like_title && large_font) {
    el.kind = ElementKind::Title;
  } else if (is_sentence_end(last_significant_char(text)) ||
             shape.words > th.title_max_words || shaped_like_title) {
    // A title-shaped line set in body type is running text.
    el.kind = ElementKind::NarrativeText;
  } else {
    el.kind = ElementKind::UncategorizedText;
  }
  return el;
}

std::vector<Element> partition(std::vector<LayoutBlock> blocks,
                               const ClassifierThresholds& th, bool keep_headers) {
  const auto ordered = reading_order(std::move(blocks));
  const auto marks = detect_headers_footers(ordered, th);
  const auto body_font = body_font_size(ordered);
  std::vector<Element> out;
  std::size_t ordinal = 0;
  std::optional<int> previous_page;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const auto& block = ordered[i];
    if (previous_page && block.page > *previous_page) {
      Element brk;
      brk.kind = ElementKind::PageBreak;
      brk.metadata.page = block.page;
      brk.metadata.element_id = make_element_id(++ordinal);
      out.push_back(std::move(brk));
    }
    previous_page = block.page;
    Element el;
    if (marks[i] == BandMark::Body) {
      el = classify(block, body_font, th);
    } else {
      el.kind = marks[i] == BandMark::Header ? ElementKind::Header : ElementKind::Footer;
      el.text = *block.text;
      el.metadata.page = block.page;
      el.metadata.bbox = block.bbox;
      el.metadata.font_size = block.font_size;
    }
    el.metadata.element_id = make_element_id(++ordinal);
    if (marks[i] != BandMark::Body && !keep_headers) continue;
    out.push_back(std::move(el));
  }
  return out;
}

}  // namespace esgdoc
