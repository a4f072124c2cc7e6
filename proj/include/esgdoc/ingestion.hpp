#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esgdoc/element.hpp"

namespace esgdoc {

enum class KindHint { Text, Table, Image };

// One unit handed over by a layout detector (or synthesized from plaintext).
struct LayoutBlock {
  int page = 1;
  std::optional<BBox> bbox;
  std::optional<double> font_size;
  std::optional<KindHint> kind_hint;
  std::optional<std::string> text;
  std::optional<TableGrid> table;
  std::optional<ImagePayload> image;

  bool operator==(const LayoutBlock&) const = default;
};

struct ClassifierThresholds {
  double header_band = 0.08;
  double footer_band = 0.08;
  std::size_t title_max_words = 20;
  double title_min_alpha_ratio = 0.5;
  double title_font_ratio = 1.1;
  std::size_t repeat_min_pages = 2;

  bool operator==(const ClassifierThresholds&) const = default;
};

std::optional<std::string> check_thresholds(const ClassifierThresholds& th);

// Layout-block JSON (schema_version 1). Errors: ParseError,
// UnsupportedVersionError, ValidationError (with the block index).
std::vector<LayoutBlock> ingest_blocks(std::string_view raw);

// Blank lines separate blocks, form feeds advance the page.
std::vector<LayoutBlock> ingest_plaintext(std::string_view raw);

inline constexpr double kColumnGap = 0.15;

// Page ascending; within a page, x0 clusters (columns) left to right, then
// top to bottom, then x0. Blocks without a bbox follow the page's positioned
// blocks in input order. Stable.
std::vector<LayoutBlock> reading_order(std::vector<LayoutBlock> blocks);

enum class BandMark { Body, Header, Footer };

std::vector<BandMark> detect_headers_footers(
    const std::vector<LayoutBlock>& blocks, const ClassifierThresholds& th);

// Replaces every run of ASCII digits with '#'.
std::string mask_digits(std::string_view text);

bool is_page_number(std::string_view text);

// Median font size over the text blocks that carry one.
std::optional<double> body_font_size(const std::vector<LayoutBlock>& blocks);

// Kind and text of one filtered block. The element id is left empty.
Element classify(const LayoutBlock& block, std::optional<double> body_font,
                 const ClassifierThresholds& th = {});

// Ordering, band detection and classification over a whole document. Element
// ids are assigned in reading order, PageBreak elements are inserted at page
// changes, and Header/Footer elements are dropped unless `keep_headers`.
std::vector<Element> partition(std::vector<LayoutBlock> blocks,
                               const ClassifierThresholds& th,
                               bool keep_headers);

}  // namespace esgdoc
