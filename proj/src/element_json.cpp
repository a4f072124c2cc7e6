#include "esgdoc/element_json.hpp"

#include "esgdoc/codec.hpp"
#include "esgdoc/errors.hpp"
#include "esgdoc/table.hpp"
#include "esgdoc/utf8.hpp"
#include "json_util.hpp"

namespace esgdoc {

using nlohmann::json;

OrderedJson table_to_json(const TableGrid& grid) {
  OrderedJson cells = OrderedJson::array();
  for (const auto& c : grid.cells) {
    OrderedJson cell;
    cell["row"] = c.row;
    cell["col"] = c.col;
    cell["row_span"] = c.row_span;
    cell["col_span"] = c.col_span;
    cell["text"] = c.text;
    cells.push_back(std::move(cell));
  }
  OrderedJson j;
  j["n_rows"] = grid.n_rows;
  j["n_cols"] = grid.n_cols;
  j["header_rows"] = grid.header_rows;
  j["cells"] = std::move(cells);
  return j;
}

TableGrid table_from_json(const json& j) {
  detail::require_object(j, "table");
  detail::reject_unknown(j, "table", {"n_rows", "n_cols", "header_rows", "cells"});
  TableGrid grid;
  grid.n_rows = detail::get_int(j, "n_rows", "table");
  grid.n_cols = detail::get_int(j, "n_cols", "table");
  if (grid.n_rows < 1 || grid.n_cols < 1) {
    throw Error("table n_rows and n_cols must be positive");
  }
  const auto& cells = detail::get_array(j, "cells", "table");
  for (const auto& cj : cells) {
    detail::require_object(cj, "table cell");
    detail::reject_unknown(cj, "table cell",
                           {"row", "col", "row_span", "col_span", "text"});
    TableCell cell;
    cell.row = detail::get_int(cj, "row", "table cell");
    cell.col = detail::get_int(cj, "col", "table cell");
    cell.row_span = detail::get_int_or(cj, "row_span", "table cell", 1);
    cell.col_span = detail::get_int_or(cj, "col_span", "table cell", 1);
    cell.text = detail::get_string_or(cj, "text", "table cell", "");
    if (cell.row < 0 || cell.col < 0) throw Error("table cell indices must be >= 0");
    if (cell.row_span < 1 || cell.col_span < 1) {
      throw Error("table cell spans must be positive");
    }
    grid.cells.push_back(std::move(cell));
  }
  validate_grid(grid);
  if (j.contains("header_rows")) {
    grid.header_rows = detail::get_int(j, "header_rows", "table");
    if (grid.header_rows < 0 || grid.header_rows > grid.n_rows) {
      throw Error("table header_rows must lie in [0, n_rows]");
    }
  } else {
    grid.header_rows = infer_header_rows(grid);
  }
  return grid;
}

OrderedJson image_to_json(const ImagePayload& image) {
  OrderedJson j;
  j["media_type"] = image.media_type;
  j["data_base64"] = codec::base64_encode(image.data);
  if (image.alt_text) j["alt_text"] = *image.alt_text;
  return j;
}

ImagePayload image_from_json(const json& j) {
  detail::require_object(j, "image");
  detail::reject_unknown(j, "image", {"media_type", "data_base64", "alt_text"});
  ImagePayload image;
  image.media_type = detail::get_string(j, "media_type", "image");
  auto data = codec::base64_decode(detail::get_string(j, "data_base64", "image"));
  if (!data) throw Error("image data_base64 is not valid base64");
  if (data->empty()) throw Error("image data must not be empty");
  image.data = std::move(*data);
  if (j.contains("alt_text") && !j.at("alt_text").is_null()) {
    image.alt_text = detail::get_string(j, "alt_text", "image");
  }
  return image;
}

namespace {

OrderedJson element_to_json(const Element& el) {
  OrderedJson j;
  j["id"] = el.metadata.element_id;
  j["kind"] = std::string(to_string(el.kind));
  j["page"] = el.metadata.page;
  if (el.metadata.bbox) {
    const auto& b = *el.metadata.bbox;
    j["bbox"] = OrderedJson::array({b.x0, b.y0, b.x1, b.y1});
  }
  if (el.metadata.font_size) j["font_size"] = *el.metadata.font_size;
  j["text"] = el.text;
  if (el.metadata.text_as_html) j["text_as_html"] = *el.metadata.text_as_html;
  if (el.table) j["table"] = table_to_json(*el.table);
  if (el.image) j["image"] = image_to_json(*el.image);
  return j;
}

Element element_from_json(const json& j) {
  detail::require_object(j, "element");
  detail::reject_unknown(j, "element",
                         {"id", "kind", "page", "bbox", "font_size", "text",
                          "text_as_html", "table", "image"});
  Element el;
  el.metadata.element_id = detail::get_string(j, "id", "element");
  const auto kind_name = detail::get_string(j, "kind", "element");
  auto kind = parse_element_kind(kind_name);
  if (!kind) throw Error("unknown element kind \"" + kind_name + "\"");
  el.kind = *kind;
  el.metadata.page = detail::get_int(j, "page", "element");
  if (j.contains("bbox")) el.metadata.bbox = detail::get_bbox(j.at("bbox"));
  if (j.contains("font_size")) {
    el.metadata.font_size = detail::get_double(j, "font_size", "element");
  }
  el.text = detail::get_string_or(j, "text", "element", "");
  if (j.contains("text_as_html")) {
    el.metadata.text_as_html = detail::get_string(j, "text_as_html", "element");
  }
  if (j.contains("table")) el.table = table_from_json(j.at("table"));
  if (j.contains("image")) el.image = image_from_json(j.at("image"));
  if (auto err = check_element(el)) throw Error(*err);
  return el;
}

}  // namespace

std::string serialize_elements(const std::vector<Element>& elements) {
  OrderedJson doc;
  doc["schema_version"] = 1;
  OrderedJson arr = OrderedJson::array();
  for (const auto& el : elements) arr.push_back(element_to_json(el));
  doc["elements"] = std::move(arr);
  return doc.dump() + "\n";
}

std::vector<Element> parse_elements(std::string_view raw) {
  utf8::require_valid(raw);
  const json doc = detail::parse_json(raw);
  detail::require_object(doc, "element document");
  detail::reject_unknown(doc, "element document", {"schema_version", "elements"});
  detail::check_schema_version(doc);
  std::vector<Element> out;
  const auto& arr = detail::get_array(doc, "elements", "element document");
  out.reserve(arr.size());
  std::size_t index = 0;
  for (const auto& ej : arr) {
    try {
      out.push_back(element_from_json(ej));
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError(index, e.what());
    }
    ++index;
  }
  return out;
}

}  // namespace esgdoc
