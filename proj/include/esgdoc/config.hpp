#pragma once

#include <string_view>

#include "esgdoc/captioning.hpp"
#include "esgdoc/cleaning.hpp"
#include "esgdoc/element.hpp"
#include "esgdoc/ingestion.hpp"

namespace esgdoc {

struct PipelineConfig {
  CleaningPolicy cleaning;
  ChunkingConfig chunking;
  ClassifierThresholds classifier;
  VisionClientConfig vision;
  bool keep_headers = false;
  OnCaptionError on_caption_error = OnCaptionError::Stub;
};

// JSON document whose keys mirror PipelineConfig; missing keys keep their
// defaults, unknown keys throw ConfigError.
PipelineConfig parse_config(std::string_view raw);

// Throws ConfigError when any component invariant fails.
void validate_config(const PipelineConfig& cfg);

}  // namespace esgdoc
