#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "esgdoc/element.hpp"

namespace esgdoc {

enum class CaptionMode { Off, Stub, Http };

std::string_view to_string(CaptionMode mode);
std::optional<CaptionMode> parse_caption_mode(std::string_view name);

enum class OnCaptionError { Fail, Stub };

inline constexpr const char* kDefaultPrompt =
    "Describe the content of this image from a corporate sustainability report "
    "in one concise paragraph.";

struct VisionClientConfig {
  CaptionMode mode = CaptionMode::Off;
  std::optional<std::string> endpoint;
  std::string model = "gpt-4-vision-preview";
  std::chrono::milliseconds timeout{60'000};
  std::size_t max_concurrent = 4;
  std::string prompt_template = kDefaultPrompt;
  // Bearer token; left empty the Authorization header is not sent.
  std::string api_key;
};

std::optional<std::string> check_vision_config(const VisionClientConfig& cfg);

// Fills `api_key` from VISION_API_KEY and `endpoint` from VISION_ENDPOINT
// when those are set.
void apply_vision_environment(VisionClientConfig& cfg);

struct VisionRequest {
  std::string prompt;
  std::string media_type;
  std::vector<std::uint8_t> image_bytes;
};

// Request body for the http mode.
std::string vision_request_json(const VisionRequest& req,
                                const std::string& model);

// False when the image carries non-blank alt text.
bool should_caption(const Element& el);

// Image with embedded text turned into a NarrativeText carrying that text.
Element use_alt_text(const Element& el);

std::string stub_caption(const ImagePayload& image);

// Single image in the given mode. In Off mode the returned element has empty
// text. Throws CaptionError on http failures.
Element caption(const Element& el, const VisionClientConfig& cfg);

// Captioning stage over a document: alt-text images take their alt text,
// the rest are captioned (or dropped in Off mode). At most max_concurrent
// requests are in flight; results keep the source positions.
std::vector<Element> caption_images(const std::vector<Element>& elements,
                                    const VisionClientConfig& cfg,
                                    OnCaptionError on_error);

}  // namespace esgdoc
