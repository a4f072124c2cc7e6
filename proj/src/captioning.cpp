#include "esgdoc/captioning.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "esgdoc/codec.hpp"
#include "esgdoc/errors.hpp"

namespace esgdoc {

std::string_view to_string(CaptionMode mode) {
  switch (mode) {
    case CaptionMode::Off: return "off";
    case CaptionMode::Stub: return "stub";
    case CaptionMode::Http: return "http";
  }
  return "off";
}

std::optional<CaptionMode> parse_caption_mode(std::string_view name) {
  if (name == "off") return CaptionMode::Off;
  if (name == "stub") return CaptionMode::Stub;
  if (name == "http") return CaptionMode::Http;
  return std::nullopt;
}

std::optional<std::string> check_vision_config(const VisionClientConfig& cfg) {
  if (cfg.mode == CaptionMode::Http && (!cfg.endpoint || cfg.endpoint->empty())) {
    return "vision mode http requires an endpoint";
  }
  if (cfg.max_concurrent == 0) return "max_concurrent must be positive";
  if (cfg.timeout.count() <= 0) return "timeout must be positive";
  return std::nullopt;
}

void apply_vision_environment(VisionClientConfig& cfg) {
  if (const char* key = std::getenv("VISION_API_KEY"); key && *key) cfg.api_key = key;
  if (const char* url = std::getenv("VISION_ENDPOINT"); url && *url) cfg.endpoint = url;
}

std::string vision_request_json(const VisionRequest& req, const std::string& model) {
  nlohmann::ordered_json body;
  body["model"] = model;
  body["prompt"] = req.prompt;
  body["image_base64"] = codec::base64_encode(req.image_bytes);
  body["media_type"] = req.media_type;
  return body.dump();
}

bool should_caption(const Element& el) {
  if (!el.image || !el.image->alt_text) return true;
  return el.image->alt_text->find_first_not_of(" \t\n\r\f\v") == std::string::npos;
}

namespace {

Element as_narrative(const Element& el, std::string text) {
  Element out;
  out.kind = ElementKind::NarrativeText;
  out.text = std::move(text);
  out.metadata = el.metadata;
  out.metadata.text_as_html.reset();
  return out;
}

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  const auto path_start =
      url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::string request_caption(const Element& el, const VisionClientConfig& cfg) {
  const auto& image = *el.image;
  const VisionRequest req{cfg.prompt_template, image.media_type, image.data};
  const auto endpoint = split_endpoint(cfg.endpoint.value_or(""));
  httplib::Client client(endpoint.origin);
  if (!client.is_valid()) throw CaptionError(el.id(), "invalid endpoint " + endpoint.origin);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(cfg.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(cfg.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());
  httplib::Headers headers;
  if (!cfg.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg.api_key);
  auto res = client.Post(endpoint.path, headers, vision_request_json(req, cfg.model),
                         "application/json");
  if (!res) throw CaptionError(el.id(), "transport failure: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw CaptionError(el.id(), "endpoint returned status " + std::to_string(res->status));
  }
  const auto body = nlohmann::json::parse(res->body, nullptr, false);
  if (body.is_discarded() || !body.is_object() || !body.contains("text") ||
      !body.at("text").is_string()) {
    throw CaptionError(el.id(), "response is not {\"text\": <string>}");
  }
  return body.at("text").get<std::string>();
}

}  // namespace

Element use_alt_text(const Element& el) { return as_narrative(el, *el.image->alt_text); }

std::string stub_caption(const ImagePayload& image) {
  return "[image " + image.media_type + " " + std::to_string(image.data.size()) +
         "B sha256:" + codec::sha256_hex(image.data).substr(0, 12) + "]";
}

Element caption(const Element& el, const VisionClientConfig& cfg) {
  switch (cfg.mode) {
    case CaptionMode::Off: return as_narrative(el, "");
    case CaptionMode::Stub: return as_narrative(el, stub_caption(*el.image));
    case CaptionMode::Http: return as_narrative(el, request_caption(el, cfg));
  }
  return as_narrative(el, "");
}

std::vector<Element> caption_images(const std::vector<Element>& elements,
                                    const VisionClientConfig& cfg, OnCaptionError on_error) {
  std::vector<std::optional<Element>> results(elements.size());
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto& el = elements[i];
    if (el.kind != ElementKind::Image || !el.image) {
      results[i] = el;
    } else if (!should_caption(el)) {
      results[i] = use_alt_text(el);
    } else if (cfg.mode != CaptionMode::Off) {
      pending.push_back(i);
    }
  }
  std::vector<std::exception_ptr> errors(elements.size());
  auto work = [&](std::size_t i) {
    try {
      results[i] = caption(elements[i], cfg);
    } catch (const CaptionError&) {
      if (on_error == OnCaptionError::Fail) {
        errors[i] = std::current_exception();
      } else {
        results[i] = as_narrative(elements[i], stub_caption(*elements[i].image));
      }
    }
  };
  if (cfg.mode == CaptionMode::Http && pending.size() > 1 && cfg.max_concurrent > 1) {
    std::atomic<std::size_t> next{0};
    const auto n_workers = std::min(cfg.max_concurrent, pending.size());
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
      workers.emplace_back([&] {
        for (std::size_t k = next++; k < pending.size(); k = next++) work(pending[k]);
      });
    }
    for (auto& t : workers) t.join();
  } else {
    for (auto i : pending) work(i);
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  std::vector<Element> out;
  out.reserve(elements.size());
  for (auto& r : results) {
    if (r) out.push_back(std::move(*r));
  }
  return out;
}

}  // namespace esgdoc
