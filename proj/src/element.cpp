#include "esgdoc/element.hpp"

#include <array>
#include <cstdio>
#include <utility>

namespace esgdoc {

namespace {

constexpr std::array<std::pair<ElementKind, std::string_view>, 9> kKindNames{{
    {ElementKind::Title, "Title"},
    {ElementKind::NarrativeText, "NarrativeText"},
    {ElementKind::ListItem, "ListItem"},
    {ElementKind::Table, "Table"},
    {ElementKind::Image, "Image"},
    {ElementKind::Header, "Header"},
    {ElementKind::Footer, "Footer"},
    {ElementKind::PageBreak, "PageBreak"},
    {ElementKind::UncategorizedText, "UncategorizedText"},
}};

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

std::string_view to_string(ElementKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "UncategorizedText";
}

std::optional<ElementKind> parse_element_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool is_text_kind(ElementKind kind) {
  switch (kind) {
    case ElementKind::Title:
    case ElementKind::NarrativeText:
    case ElementKind::ListItem:
    case ElementKind::UncategorizedText:
      return true;
    default:
      return false;
  }
}

std::optional<std::string> check_bbox(const BBox& box) {
  if (!in_unit(box.x0) || !in_unit(box.y0) || !in_unit(box.x1) ||
      !in_unit(box.y1)) {
    return "bbox coordinates must lie in [0,1]";
  }
  if (box.x0 > box.x1 || box.y0 > box.y1) return "bbox requires x0<=x1 and y0<=y1";
  return std::nullopt;
}

std::optional<std::string> check_element(const Element& el) {
  if (el.metadata.page < 1) return "page must be positive";
  if (el.metadata.element_id.empty()) return "element_id must not be empty";
  if (el.metadata.bbox) {
    if (auto err = check_bbox(*el.metadata.bbox)) return err;
  }
  if (el.metadata.font_size && !(*el.metadata.font_size > 0)) {
    return "font_size must be positive";
  }
  const bool is_table = el.kind == ElementKind::Table;
  if (el.metadata.text_as_html.has_value() != is_table) {
    return "text_as_html is present iff kind is Table";
  }
  if (el.table.has_value() != is_table) return "table is present iff kind is Table";
  if (el.image.has_value() != (el.kind == ElementKind::Image)) {
    return "image is present iff kind is Image";
  }
  if (el.image && el.image->data.empty()) return "image data must not be empty";
  return std::nullopt;
}

std::string make_element_id(std::size_t ordinal) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "e%06zu", ordinal);
  return buf;
}

std::optional<std::string> check_chunking_config(const ChunkingConfig& cfg) {
  if (cfg.max_characters == 0) return "max_characters must be positive";
  if (cfg.combine_text_under_n_chars > cfg.max_characters) {
    return "combine_text_under_n_chars must not exceed max_characters";
  }
  if (cfg.new_after_n_chars && *cfg.new_after_n_chars > cfg.max_characters) {
    return "new_after_n_chars must not exceed max_characters";
  }
  return std::nullopt;
}

std::size_t effective_soft_limit(const ChunkingConfig& cfg) {
  return cfg.new_after_n_chars.value_or(cfg.max_characters);
}

}  // namespace esgdoc
