#include "esgdoc/exporters.hpp"

#include <json.hpp>

#include "esgdoc/table.hpp"

namespace esgdoc {

std::string_view to_string(ExportFormat fmt) {
  switch (fmt) {
    case ExportFormat::Jsonl: return "jsonl";
    case ExportFormat::Csv: return "csv";
    case ExportFormat::Html: return "html";
  }
  return "jsonl";
}

std::optional<ExportFormat> parse_export_format(std::string_view name) {
  if (name == "jsonl") return ExportFormat::Jsonl;
  if (name == "csv") return ExportFormat::Csv;
  if (name == "html") return ExportFormat::Html;
  return std::nullopt;
}

std::string csv_quote(std::string_view field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string export_jsonl(const std::vector<Record>& records) {
  std::string out;
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["title"] = r.title;
    j["body"] = r.body;
    j["pages"] = {r.page_start, r.page_end};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string export_csv(const std::vector<Record>& records) {
  std::string out = "title,body,page_start,page_end\r\n";
  for (const auto& r : records) {
    out += csv_quote(r.title);
    out += ',';
    out += csv_quote(r.body);
    out += ',';
    out += std::to_string(r.page_start);
    out += ',';
    out += std::to_string(r.page_end);
    out += "\r\n";
  }
  return out;
}

namespace {

bool is_table_html(std::string_view paragraph) {
  return paragraph.starts_with("<table") && paragraph.ends_with("</table>");
}

}  // namespace

std::string export_html(const std::vector<Record>& records) {
  std::string out =
      "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
      "<title>Records</title>\n</head>\n<body>\n";
  for (const auto& r : records) {
    out += "<section>";
    if (!r.title.empty()) out += "<h2>" + html_escape(r.title) + "</h2>";
    std::string_view body = r.body;
    while (!body.empty()) {
      const auto sep = body.find("\n\n");
      const auto paragraph = body.substr(0, sep);
      if (is_table_html(paragraph)) {
        out += paragraph;
      } else if (!paragraph.empty()) {
        out += "<p>" + html_escape(paragraph) + "</p>";
      }
      if (sep == std::string_view::npos) break;
      body.remove_prefix(sep + 2);
    }
    out += "</section>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

std::string export_records(const std::vector<Record>& records, ExportFormat fmt) {
  switch (fmt) {
    case ExportFormat::Jsonl: return export_jsonl(records);
    case ExportFormat::Csv: return export_csv(records);
    case ExportFormat::Html: return export_html(records);
  }
  return {};
}

}  // namespace esgdoc
