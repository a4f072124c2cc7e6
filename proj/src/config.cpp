#include "esgdoc/config.hpp"

#include <cmath>

#include "esgdoc/errors.hpp"
#include "json_util.hpp"

namespace esgdoc {

using nlohmann::json;

namespace {

std::size_t get_count(const json& j, std::string_view key, std::string_view what) {
  const auto& v = detail::get_field(j, key, what);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(std::string(what) + "." + std::string(key) +
                      " must be a non-negative integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

template <typename Fn>
void for_section(const json& root, const char* name,
                 std::initializer_list<std::string_view> keys, Fn&& fn) {
  if (!root.contains(name)) return;
  const auto& section = root.at(name);
  detail::require_object(section, name);
  detail::reject_unknown(section, name, keys);
  fn(section);
}

}  // namespace

PipelineConfig parse_config(std::string_view raw) {
  PipelineConfig cfg;
  json root;
  try {
    root = detail::parse_json(raw);
  } catch (const ParseError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  try {
    detail::require_object(root, "config");
    detail::reject_unknown(root, "config", {"cleaning", "chunking", "classifier", "vision",
                                            "keep_headers", "on_caption_error"});
    for_section(root, "cleaning",
                {"group_broken_paragraphs", "clean_bullets", "clean_leading_dashes",
                 "clean_extra_whitespace", "dehyphenate_linebreaks"},
                [&](const json& s) {
                  auto& c = cfg.cleaning;
                  auto flag = [&](const char* key, bool& field) {
                    if (s.contains(key)) field = detail::get_bool(s, key, "cleaning");
                  };
                  flag("group_broken_paragraphs", c.group_broken_paragraphs);
                  flag("clean_bullets", c.clean_bullets);
                  flag("clean_leading_dashes", c.clean_leading_dashes);
                  flag("clean_extra_whitespace", c.clean_extra_whitespace);
                  flag("dehyphenate_linebreaks", c.dehyphenate_linebreaks);
                });
    for_section(root, "chunking",
                {"multipage_sections", "combine_text_under_n_chars", "new_after_n_chars",
                 "max_characters"},
                [&](const json& s) {
                  auto& c = cfg.chunking;
                  if (s.contains("multipage_sections")) {
                    c.multipage_sections = detail::get_bool(s, "multipage_sections", "chunking");
                  }
                  if (s.contains("combine_text_under_n_chars")) {
                    c.combine_text_under_n_chars =
                        get_count(s, "combine_text_under_n_chars", "chunking");
                  }
                  if (s.contains("new_after_n_chars")) {
                    if (s.at("new_after_n_chars").is_null()) {
                      c.new_after_n_chars.reset();
                    } else {
                      c.new_after_n_chars = get_count(s, "new_after_n_chars", "chunking");
                    }
                  }
                  if (s.contains("max_characters")) {
                    c.max_characters = get_count(s, "max_characters", "chunking");
                  }
                });
    for_section(root, "classifier",
                {"header_band", "footer_band", "title_max_words", "title_min_alpha_ratio",
                 "title_font_ratio", "repeat_min_pages"},
                [&](const json& s) {
                  auto& c = cfg.classifier;
                  auto real = [&](const char* key, double& field) {
                    if (s.contains(key)) field = detail::get_double(s, key, "classifier");
                  };
                  real("header_band", c.header_band);
                  real("footer_band", c.footer_band);
                  real("title_min_alpha_ratio", c.title_min_alpha_ratio);
                  real("title_font_ratio", c.title_font_ratio);
                  if (s.contains("title_max_words")) {
                    c.title_max_words = get_count(s, "title_max_words", "classifier");
                  }
                  if (s.contains("repeat_min_pages")) {
                    c.repeat_min_pages = get_count(s, "repeat_min_pages", "classifier");
                  }
                });
    for_section(root, "vision",
                {"mode", "endpoint", "model", "timeout_seconds", "max_concurrent",
                 "prompt_template"},
                [&](const json& s) {
                  auto& v = cfg.vision;
                  if (s.contains("mode")) {
                    const auto name = detail::get_string(s, "mode", "vision");
                    auto mode = parse_caption_mode(name);
                    if (!mode) throw ConfigError("vision.mode must be off, stub or http");
                    v.mode = *mode;
                  }
                  if (s.contains("endpoint")) {
                    if (s.at("endpoint").is_null()) {
                      v.endpoint.reset();
                    } else {
                      v.endpoint = detail::get_string(s, "endpoint", "vision");
                    }
                  }
                  if (s.contains("model")) v.model = detail::get_string(s, "model", "vision");
                  if (s.contains("timeout_seconds")) {
                    const double secs = detail::get_double(s, "timeout_seconds", "vision");
                    if (!(secs > 0)) throw ConfigError("vision.timeout_seconds must be positive");
                    v.timeout = std::chrono::milliseconds(std::llround(secs * 1000));
                  }
                  if (s.contains("max_concurrent")) {
                    v.max_concurrent = get_count(s, "max_concurrent", "vision");
                  }
                  if (s.contains("prompt_template")) {
                    v.prompt_template = detail::get_string(s, "prompt_template", "vision");
                  }
                });
    if (root.contains("keep_headers")) {
      cfg.keep_headers = detail::get_bool(root, "keep_headers", "config");
    }
    if (root.contains("on_caption_error")) {
      const auto name = detail::get_string(root, "on_caption_error", "config");
      if (name == "fail") {
        cfg.on_caption_error = OnCaptionError::Fail;
      } else if (name == "stub") {
        cfg.on_caption_error = OnCaptionError::Stub;
      } else {
        throw ConfigError("on_caption_error must be fail or stub");
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  validate_config(cfg);
  return cfg;
}

void validate_config(const PipelineConfig& cfg) {
  if (auto err = check_chunking_config(cfg.chunking)) throw ConfigError("chunking: " + *err);
  if (auto err = check_thresholds(cfg.classifier)) throw ConfigError("classifier: " + *err);
  if (auto err = check_vision_config(cfg.vision)) throw ConfigError("vision: " + *err);
}

}  // namespace esgdoc
