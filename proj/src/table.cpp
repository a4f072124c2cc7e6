#include "esgdoc/table.hpp"

#include <regex>
#include <vector>

#include "esgdoc/errors.hpp"

namespace esgdoc {

namespace {

// Cell index anchored at each position, -1 for continuation positions.
std::vector<int> anchor_map(const TableGrid& grid) {
  const auto width = static_cast<std::size_t>(grid.n_cols);
  const auto size = static_cast<std::size_t>(grid.n_rows) * width;
  std::vector<int> coverage(size, 0);
  std::vector<int> anchors(size, -1);
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    const auto& c = grid.cells[i];
    if (c.row < 0 || c.col < 0 || c.row_span < 1 || c.col_span < 1 ||
        c.row + c.row_span > grid.n_rows || c.col + c.col_span > grid.n_cols) {
      throw TilingError(c.row, c.col, "cell span leaves the grid");
    }
    for (int r = c.row; r < c.row + c.row_span; ++r) {
      for (int k = c.col; k < c.col + c.col_span; ++k) {
        ++coverage[static_cast<std::size_t>(r) * width + k];
      }
    }
    anchors[static_cast<std::size_t>(c.row) * width + c.col] = static_cast<int>(i);
  }
  for (std::size_t p = 0; p < size; ++p) {
    if (coverage[p] != 1) {
      throw TilingError(static_cast<int>(p / width), static_cast<int>(p % width),
                        coverage[p] == 0 ? "position not covered"
                                         : "position covered more than once");
    }
  }
  return anchors;
}

void append_cell(std::string& out, const TableCell& cell, bool header) {
  out += header ? "<th" : "<td";
  if (cell.row_span > 1) out += " rowspan=\"" + std::to_string(cell.row_span) + "\"";
  if (cell.col_span > 1) out += " colspan=\"" + std::to_string(cell.col_span) + "\"";
  out += '>';
  out += html_escape(cell.text);
  out += header ? "</th>" : "</td>";
}

}  // namespace

void validate_grid(const TableGrid& grid) {
  if (grid.n_rows < 1 || grid.n_cols < 1) {
    throw TilingError(0, 0, "grid must have at least one row and column");
  }
  if (grid.header_rows < 0 || grid.header_rows > grid.n_rows) {
    throw TilingError(0, 0, "header_rows must lie in [0, n_rows]");
  }
  anchor_map(grid);
}

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string to_html(const TableGrid& grid) {
  validate_grid(grid);
  const auto anchors = anchor_map(grid);
  std::string out = "<table border=\"1\">";
  auto emit_rows = [&](int from, int to, bool header) {
    for (int r = from; r < to; ++r) {
      out += "<tr>";
      for (int k = 0; k < grid.n_cols; ++k) {
        const int idx = anchors[static_cast<std::size_t>(r) * grid.n_cols + k];
        if (idx >= 0) append_cell(out, grid.cells[static_cast<std::size_t>(idx)], header);
      }
      out += "</tr>";
    }
  };
  if (grid.header_rows > 0) {
    out += "<thead>";
    emit_rows(0, grid.header_rows, true);
    out += "</thead>";
  }
  out += "<tbody>";
  emit_rows(grid.header_rows, grid.n_rows, false);
  out += "</tbody></table>";
  return out;
}

std::string to_raw_text(const TableGrid& grid) {
  validate_grid(grid);
  const auto anchors = anchor_map(grid);
  std::string out;
  for (int r = 0; r < grid.n_rows; ++r) {
    if (r > 0) out += '\n';
    bool first = true;
    for (int k = 0; k < grid.n_cols; ++k) {
      const int idx = anchors[static_cast<std::size_t>(r) * grid.n_cols + k];
      if (idx < 0) continue;
      const auto& text = grid.cells[static_cast<std::size_t>(idx)].text;
      if (text.empty()) continue;
      if (!first) out += ' ';
      out += text;
      first = false;
    }
  }
  return out;
}

bool looks_numeric(std::string_view text) {
  static const std::regex kNumber(R"(^\s*[-+(]?[$€£¥]?\d[\d,]*(\.\d+)?\)?\s*%?\s*$|^\s*[-+]?\.\d+\s*%?\s*$)");
  return std::regex_match(text.begin(), text.end(), kNumber);
}

int infer_header_rows(const TableGrid& grid) {
  bool any = false;
  for (const auto& c : grid.cells) {
    if (c.row != 0) continue;
    any = true;
    if (looks_numeric(c.text)) return 0;
  }
  return any ? 1 : 0;
}

}  // namespace esgdoc
