#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace esgdoc {

enum class ElementKind {
  Title,
  NarrativeText,
  ListItem,
  Table,
  Image,
  Header,
  Footer,
  PageBreak,
  UncategorizedText,
};

std::string_view to_string(ElementKind kind);
std::optional<ElementKind> parse_element_kind(std::string_view name);

// True for the kinds whose text goes through the cleaning functions.
bool is_text_kind(ElementKind kind);

// Page-normalized coordinates, origin at the top-left corner.
struct BBox {
  double x0 = 0;
  double y0 = 0;
  double x1 = 0;
  double y1 = 0;

  bool operator==(const BBox&) const = default;
};

// Reasons a bbox is rejected, or nullopt.
std::optional<std::string> check_bbox(const BBox& box);

struct TableCell {
  int row = 0;
  int col = 0;
  int row_span = 1;
  int col_span = 1;
  std::string text;

  bool operator==(const TableCell&) const = default;
};

struct TableGrid {
  int n_rows = 0;
  int n_cols = 0;
  int header_rows = 0;
  std::vector<TableCell> cells;

  bool operator==(const TableGrid&) const = default;
};

struct ImagePayload {
  std::string media_type;
  std::vector<std::uint8_t> data;
  std::optional<std::string> alt_text;

  bool operator==(const ImagePayload&) const = default;
};

struct ElementMetadata {
  int page = 1;
  std::optional<BBox> bbox;
  std::optional<double> font_size;
  std::string element_id;
  std::optional<std::string> text_as_html;

  bool operator==(const ElementMetadata&) const = default;
};

struct Element {
  ElementKind kind = ElementKind::UncategorizedText;
  std::string text;
  ElementMetadata metadata;
  std::optional<TableGrid> table;
  std::optional<ImagePayload> image;

  const std::string& id() const { return metadata.element_id; }
  int page() const { return metadata.page; }

  bool operator==(const Element&) const = default;
};

// Checks the per-element invariants (payload/kind agreement, bbox order,
// positive page). Returns a description of the first violation.
std::optional<std::string> check_element(const Element& el);

// `e000042` for ordinal 42.
std::string make_element_id(std::size_t ordinal);

struct ChunkingConfig {
  bool multipage_sections = true;
  std::size_t combine_text_under_n_chars = 0;
  std::optional<std::size_t> new_after_n_chars;
  std::size_t max_characters = 4096;

  bool operator==(const ChunkingConfig&) const = default;
};

std::optional<std::string> check_chunking_config(const ChunkingConfig& cfg);

// Section length at which the chunker starts a new section.
std::size_t effective_soft_limit(const ChunkingConfig& cfg);

}  // namespace esgdoc
