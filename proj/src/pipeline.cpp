#include "esgdoc/pipeline.hpp"

#include <algorithm>
#include <cctype>

#include "esgdoc/captioning.hpp"
#include "esgdoc/cleaning.hpp"
#include "esgdoc/integrator.hpp"

namespace esgdoc {

InputFormat input_format_for(std::string_view path) {
  std::string lower(path);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lower.ends_with(".json") ? InputFormat::Blocks : InputFormat::Plaintext;
}

std::vector<LayoutBlock> ingest(std::string_view raw, InputFormat format) {
  return format == InputFormat::Blocks ? ingest_blocks(raw) : ingest_plaintext(raw);
}

std::vector<Element> partition_document(std::string_view raw, InputFormat format,
                                        const PipelineConfig& cfg) {
  return partition(ingest(raw, format), cfg.classifier, cfg.keep_headers);
}

std::vector<Chunk> chunk_elements(const std::vector<Element>& elements,
                                  const PipelineConfig& cfg) {
  std::vector<Element> cleaned;
  cleaned.reserve(elements.size());
  for (const auto& el : elements) {
    if (el.kind == ElementKind::Header || el.kind == ElementKind::Footer) continue;
    cleaned.push_back(clean_element(el, cfg.cleaning));
  }
  const auto captioned = caption_images(cleaned, cfg.vision, cfg.on_caption_error);
  return chunk_by_title(captioned, cfg.chunking);
}

ProcessResult process_document(std::string_view raw, InputFormat format,
                               const PipelineConfig& cfg, ExportFormat fmt) {
  ProcessResult result;
  const auto elements = partition_document(raw, format, cfg);
  result.chunks = chunk_elements(elements, cfg);
  result.records = integrate(result.chunks);
  result.output = export_records(result.records, fmt);
  return result;
}

}  // namespace esgdoc
