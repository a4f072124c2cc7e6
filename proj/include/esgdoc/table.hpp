#pragma once

#include <string>
#include <string_view>

#include "esgdoc/element.hpp"

namespace esgdoc {

// Throws TilingError naming the first (row-major) uncovered or doubly covered
// position, or the first cell whose span leaves the grid.
void validate_grid(const TableGrid& grid);

// Single-line canonical HTML: <table border="1">, optional <thead> for the
// header rows, <tbody> for the rest. Span attributes only when > 1.
std::string to_html(const TableGrid& grid);

// Rows joined by "\n", non-empty anchor cell texts joined by one space.
std::string to_raw_text(const TableGrid& grid);

// 1 when every cell anchored in the first row is non-numeric, else 0.
int infer_header_rows(const TableGrid& grid);

bool looks_numeric(std::string_view text);

std::string html_escape(std::string_view text);

}  // namespace esgdoc
