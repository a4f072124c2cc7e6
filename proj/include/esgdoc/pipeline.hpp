#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "esgdoc/chunker.hpp"
#include "esgdoc/config.hpp"
#include "esgdoc/element.hpp"
#include "esgdoc/exporters.hpp"
#include "esgdoc/ingestion.hpp"

namespace esgdoc {

enum class InputFormat { Blocks, Plaintext };

// ".json" → Blocks; anything else is plaintext.
InputFormat input_format_for(std::string_view path);

std::vector<LayoutBlock> ingest(std::string_view raw, InputFormat format);

// ingest → order → header/footer → classify.
std::vector<Element> partition_document(std::string_view raw,
                                        InputFormat format,
                                        const PipelineConfig& cfg);

// clean → caption → chunk.
std::vector<Chunk> chunk_elements(const std::vector<Element>& elements,
                                  const PipelineConfig& cfg);

struct ProcessResult {
  std::vector<Chunk> chunks;
  std::vector<Record> records;
  std::string output;
};

ProcessResult process_document(std::string_view raw, InputFormat format,
                               const PipelineConfig& cfg, ExportFormat fmt);

}  // namespace esgdoc
