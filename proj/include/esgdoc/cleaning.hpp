#pragma once

#include <string>
#include <string_view>

#include "esgdoc/element.hpp"

namespace esgdoc {

struct CleaningPolicy {
  bool group_broken_paragraphs = true;
  bool clean_bullets = true;
  bool clean_leading_dashes = true;
  bool clean_extra_whitespace = true;
  bool dehyphenate_linebreaks = true;

  bool operator==(const CleaningPolicy&) const = default;
};

// Blank-line runs become "\n\n", single newlines become a space. With
// `dehyphenate`, "word-\n" followed by a lowercase letter joins the halves.
std::string group_broken_paragraphs(std::string_view text,
                                    bool dehyphenate = true);

// Removes leading bullet glyphs (and the whitespace after them) at the start
// of the text and of every paragraph.
std::string clean_bullets(std::string_view text);

// Removes leading runs of '-', en dash and em dash followed by whitespace.
std::string clean_leading_dashes(std::string_view text);

std::string clean_extra_whitespace(std::string_view text);

// Applies the enabled steps in fixed order: paragraphs, bullets, dashes,
// whitespace. Non-text kinds are returned unchanged.
Element clean_element(const Element& el, const CleaningPolicy& policy);

// Same ordered steps on a bare string.
std::string clean_text(std::string_view text, const CleaningPolicy& policy);

}  // namespace esgdoc
