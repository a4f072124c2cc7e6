#include "esgdoc/cleaning.hpp"

#include "esgdoc/utf8.hpp"

namespace esgdoc {

namespace {

std::u32string decode_all(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) out.push_back(utf8::decode(text, pos));
  return out;
}

std::string encode_all(const std::u32string& text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) utf8::append(out, c);
  return out;
}

// Horizontal whitespace for every cleaning step; '\n' is the only line break.
bool is_hspace(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\r' || c == U'\v' || c == U'\f';
}

bool is_ws(char32_t c) { return is_hspace(c) || c == U'\n'; }

bool is_lower(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= 0xDF && c <= 0xFF && c != 0xF7);
}

// Glyphs that are bullets wherever they appear at a paragraph start.
bool is_round_bullet(char32_t c) {
  return c == U'•' || c == U'●' || c == U'◦' || c == U'▪' || c == U'·';
}

bool is_dash(char32_t c) { return c == U'-' || c == U'–' || c == U'—'; }

// Positions where a paragraph's first non-whitespace character sits: the
// string start and after every "\n<blanks>\n".
template <typename Fn>
std::u32string strip_paragraph_starts(const std::u32string& s, Fn strip_at) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  bool at_start = true;
  while (i < s.size()) {
    if (at_start) {
      while (i < s.size() && is_ws(s[i])) out.push_back(s[i++]);
      i = strip_at(s, i);
      at_start = false;
      continue;
    }
    out.push_back(s[i]);
    if (s[i] == U'\n') {
      std::size_t j = i + 1;
      while (j < s.size() && is_hspace(s[j])) ++j;
      if (j < s.size() && s[j] == U'\n') {
        for (std::size_t k = i + 1; k <= j; ++k) out.push_back(s[k]);
        i = j + 1;
        at_start = true;
        continue;
      }
    }
    ++i;
  }
  return out;
}

std::size_t skip_ws(const std::u32string& s, std::size_t i) {
  while (i < s.size() && is_ws(s[i])) ++i;
  return i;
}

std::size_t strip_bullets_at(const std::u32string& s, std::size_t i) {
  while (i < s.size()) {
    const char32_t c = s[i];
    const bool followed_by_ws = i + 1 >= s.size() || is_ws(s[i + 1]);
    if (is_round_bullet(c) || ((c == U'*' || is_dash(c)) && followed_by_ws)) {
      i = skip_ws(s, i + 1);
    } else {
      break;
    }
  }
  return i;
}

std::size_t strip_dashes_at(const std::u32string& s, std::size_t i) {
  while (i < s.size() && is_dash(s[i])) {
    std::size_t j = i;
    while (j < s.size() && is_dash(s[j])) ++j;
    if (j < s.size() && !is_ws(s[j])) break;
    i = skip_ws(s, j);
  }
  return i;
}

}  // namespace

std::string group_broken_paragraphs(std::string_view text, bool dehyphenate) {
  const auto s = decode_all(text);
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_ws(s[i])) {
      out.push_back(s[i++]);
      continue;
    }
    std::size_t j = i;
    int newlines = 0;
    while (j < s.size() && is_ws(s[j])) newlines += s[j++] == U'\n';
    if (newlines == 0) {
      out.append(s, i, j - i);
    } else if (newlines >= 2) {
      out += U"\n\n";
    } else {
      const bool hyphen_break = dehyphenate && out.size() >= 2 &&
                                out.back() == U'-' &&
                                utf8::is_alpha(out[out.size() - 2]) &&
                                j < s.size() && is_lower(s[j]);
      if (hyphen_break) {
        out.pop_back();
      } else {
        out.push_back(U' ');
      }
    }
    i = j;
  }
  return encode_all(out);
}

std::string clean_bullets(std::string_view text) {
  return encode_all(strip_paragraph_starts(decode_all(text), strip_bullets_at));
}

std::string clean_leading_dashes(std::string_view text) {
  return encode_all(strip_paragraph_starts(decode_all(text), strip_dashes_at));
}

std::string clean_extra_whitespace(std::string_view text) {
  const auto s = decode_all(text);
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_ws(s[i])) {
      out.push_back(s[i++]);
      continue;
    }
    std::size_t j = i;
    int newlines = 0;
    while (j < s.size() && is_ws(s[j])) newlines += s[j++] == U'\n';
    if (i > 0 && j < s.size()) {
      if (newlines == 0) {
        out.push_back(U' ');
      } else if (newlines == 1) {
        out.push_back(U'\n');
      } else {
        out += U"\n\n";
      }
    }
    i = j;
  }
  return encode_all(out);
}

std::string clean_text(std::string_view text, const CleaningPolicy& policy) {
  std::string s(text);
  if (policy.group_broken_paragraphs) {
    s = group_broken_paragraphs(s, policy.dehyphenate_linebreaks);
  }
  // Removing one kind of leading glyph can expose the other ("-- • x").
  if (policy.clean_bullets || policy.clean_leading_dashes) {
    for (;;) {
      std::string next = s;
      if (policy.clean_bullets) next = clean_bullets(next);
      if (policy.clean_leading_dashes) next = clean_leading_dashes(next);
      if (next == s) break;
      s = std::move(next);
    }
  }
  if (policy.clean_extra_whitespace) s = clean_extra_whitespace(s);
  return s;
}

Element clean_element(const Element& el, const CleaningPolicy& policy) {
  if (!is_text_kind(el.kind)) return el;
  Element out = el;
  out.text = clean_text(el.text, policy);
  return out;
}

}  // namespace esgdoc
