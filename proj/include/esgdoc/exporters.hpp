#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esgdoc/integrator.hpp"

namespace esgdoc {

enum class ExportFormat { Jsonl, Csv, Html };

std::string_view to_string(ExportFormat fmt);
std::optional<ExportFormat> parse_export_format(std::string_view name);

std::string export_records(const std::vector<Record>& records,
                           ExportFormat fmt);

std::string export_jsonl(const std::vector<Record>& records);
std::string export_csv(const std::vector<Record>& records);
std::string export_html(const std::vector<Record>& records);

std::string csv_quote(std::string_view field);

}  // namespace esgdoc
