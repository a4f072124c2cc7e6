#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "esgdoc/element.hpp"

namespace esgdoc {

using OrderedJson = nlohmann::ordered_json;

// Canonical element document:
//   {"schema_version":1,"elements":[{"id","kind","page","bbox","font_size",
//    "text","text_as_html","table","image"}...]}
// Absent optionals are omitted; the serialized bytes end with a single LF.
std::string serialize_elements(const std::vector<Element>& elements);
std::vector<Element> parse_elements(std::string_view raw);

OrderedJson table_to_json(const TableGrid& grid);
// `header_rows` is inferred when the key is missing.
TableGrid table_from_json(const nlohmann::json& j);

OrderedJson image_to_json(const ImagePayload& image);
ImagePayload image_from_json(const nlohmann::json& j);

}  // namespace esgdoc
