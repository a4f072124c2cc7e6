#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "esgdoc/captioning.hpp"
#include "esgdoc/config.hpp"
#include "esgdoc/element_json.hpp"
#include "esgdoc/errors.hpp"
#include "esgdoc/integrator.hpp"
#include "esgdoc/pipeline.hpp"

namespace esgdoc::cli {

namespace fs = std::filesystem;

namespace {

// I/O and usage failures map to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChunkFlags {
  std::optional<std::size_t> max_characters;
  std::optional<std::size_t> new_after;
  std::optional<std::size_t> combine_under;
  bool no_multipage = false;
  std::optional<std::string> caption_images;
};

struct Options {
  std::optional<std::string> config_path;
  std::vector<std::string> inputs;
  std::optional<std::string> output;
  bool keep_headers = false;
  ChunkFlags chunk;
  std::string format = "jsonl";
  std::size_t jobs = 1;
  std::optional<std::string> dump_chunks;
};

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw UsageError("no such input: " + path);
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot read input: " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

void write_output(const std::optional<std::string>& path, const std::string& bytes,
                  std::ostream& out) {
  if (!path || *path == "-") {
    out << bytes;
    out.flush();
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot write output: " + *path);
  file << bytes;
  if (!file) throw UsageError("failed writing output: " + *path);
}

// Plaintext unless the name says .json; stdin is sniffed for a JSON object.
InputFormat detect_format(const std::string& path, std::string_view raw) {
  if (path != "-") return input_format_for(path);
  const auto first = raw.find_first_not_of(" \t\r\n");
  return first != std::string_view::npos && raw[first] == '{' ? InputFormat::Blocks
                                                              : InputFormat::Plaintext;
}

PipelineConfig load_config(const Options& opts, std::istream& in) {
  PipelineConfig cfg;
  if (opts.config_path) {
    if (*opts.config_path == "-") throw UsageError("--config cannot read standard input");
    cfg = parse_config(read_input(*opts.config_path, in));
  }
  if (opts.keep_headers) cfg.keep_headers = true;
  const auto& f = opts.chunk;
  if (f.max_characters) cfg.chunking.max_characters = *f.max_characters;
  if (f.new_after) cfg.chunking.new_after_n_chars = *f.new_after;
  if (f.combine_under) cfg.chunking.combine_text_under_n_chars = *f.combine_under;
  if (f.no_multipage) cfg.chunking.multipage_sections = false;
  if (f.caption_images) cfg.vision.mode = *parse_caption_mode(*f.caption_images);
  apply_vision_environment(cfg.vision);
  validate_config(cfg);
  return cfg;
}

void add_config_option(CLI::App* cmd, Options& opts) {
  cmd->add_option("--config", opts.config_path, "Pipeline config file (JSON)");
}

void add_chunk_flags(CLI::App* cmd, Options& opts) {
  auto& f = opts.chunk;
  cmd->add_option("--max-characters", f.max_characters, "Hard chunk size limit")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--new-after", f.new_after, "Soft chunk size limit")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--combine-under", f.combine_under, "Merge chunks shorter than this")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--no-multipage", f.no_multipage, "Close sections at page breaks");
  cmd->add_option("--caption-images", f.caption_images, "Image captioning mode")
      ->check(CLI::IsMember({"off", "stub", "http"}));
}

int cmd_partition(const Options& opts, std::istream& in, std::ostream& out) {
  const auto cfg = load_config(opts, in);
  const auto& path = opts.inputs.front();
  const auto raw = read_input(path, in);
  const auto elements = partition_document(raw, detect_format(path, raw), cfg);
  write_output(opts.output, serialize_elements(elements), out);
  return kExitOk;
}

int cmd_chunk(const Options& opts, std::istream& in, std::ostream& out) {
  const auto cfg = load_config(opts, in);
  const auto raw = read_input(opts.inputs.front(), in);
  const auto chunks = chunk_elements(parse_elements(raw), cfg);
  write_output(opts.output, serialize_chunks(chunks), out);
  return kExitOk;
}

struct FileOutcome {
  int code = kExitOk;
  std::string diagnostic;
};

FileOutcome process_one(const std::string& path, const std::optional<std::string>& output,
                        const std::optional<std::string>& dump, const PipelineConfig& cfg,
                        ExportFormat fmt, std::istream& in, std::ostream& out) {
  try {
    const auto raw = read_input(path, in);
    const auto result = process_document(raw, detect_format(path, raw), cfg, fmt);
    if (dump) write_output(dump, serialize_chunks(result.chunks), out);
    write_output(output, result.output, out);
    return {};
  } catch (const UsageError& e) {
    return {kExitUsage, e.what()};
  } catch (const Error& e) {
    return {kExitPipeline, path + ": " + e.what()};
  } catch (const std::exception& e) {
    return {kExitPipeline, path + ": " + e.what()};
  }
}

int cmd_process(const Options& opts, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto cfg = load_config(opts, in);
  const auto fmt = *parse_export_format(opts.format);
  if (opts.inputs.size() == 1) {
    auto outcome = process_one(opts.inputs.front(), opts.output, opts.dump_chunks, cfg, fmt,
                               in, out);
    if (outcome.code != kExitOk) err << "esgdoc: " << outcome.diagnostic << '\n';
    return outcome.code;
  }

  // Several inputs: --output and --dump-chunks name directories.
  if (std::count(opts.inputs.begin(), opts.inputs.end(), "-") > 0) {
    throw UsageError("standard input cannot be combined with other inputs");
  }
  if (!opts.output) throw UsageError("--output DIR is required with several inputs");
  auto make_dir = [](const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw UsageError("cannot create directory: " + dir);
  };
  make_dir(*opts.output);
  if (opts.dump_chunks) make_dir(*opts.dump_chunks);

  std::vector<FileOutcome> outcomes(opts.inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < opts.inputs.size(); i = next++) {
      const auto& path = opts.inputs[i];
      const auto stem = fs::path(path).stem().string();
      const auto target = (fs::path(*opts.output) / (stem + "." + opts.format)).string();
      std::optional<std::string> dump;
      if (opts.dump_chunks) dump = (fs::path(*opts.dump_chunks) / (stem + ".chunks.json")).string();
      outcomes[i] = process_one(path, target, dump, cfg, fmt, in, out);
    }
  };
  const auto n_workers = std::max<std::size_t>(1, std::min(opts.jobs, opts.inputs.size()));
  std::vector<std::thread> threads;
  for (std::size_t w = 1; w < n_workers; ++w) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  int code = kExitOk;
  for (const auto& o : outcomes) {
    if (o.code != kExitOk) err << "esgdoc: " << o.diagnostic << '\n';
    code = std::max(code, o.code);
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Structure report documents into title-body records", "esgdoc"};
  app.require_subcommand(1);
  Options opts;

  auto* partition = app.add_subcommand("partition", "Split a document into typed elements");
  partition->add_option("input", opts.inputs, "Layout-block JSON or plaintext ('-' for stdin)")
      ->required()
      ->expected(1);
  partition->add_option("-o,--output", opts.output, "Output path (default: stdout)");
  partition->add_flag("--keep-headers", opts.keep_headers, "Keep Header/Footer elements");
  add_config_option(partition, opts);

  auto* chunk = app.add_subcommand("chunk", "Clean, caption and chunk an element file");
  chunk->add_option("input", opts.inputs, "Element JSON ('-' for stdin)")->required()->expected(1);
  chunk->add_option("-o,--output", opts.output, "Output path (default: stdout)");
  add_chunk_flags(chunk, opts);
  add_config_option(chunk, opts);

  auto* process = app.add_subcommand("process", "Run the whole pipeline and export records");
  process->add_option("inputs", opts.inputs, "Input documents")->required()->expected(1, -1);
  process->add_option("-o,--output", opts.output,
                      "Output path, or directory with several inputs (default: stdout)");
  process->add_option("--format", opts.format, "jsonl, csv or html")
      ->check(CLI::IsMember({"jsonl", "csv", "html"}));
  process->add_option("--jobs", opts.jobs, "Files processed in parallel")
      ->check(CLI::PositiveNumber);
  process->add_option("--dump-chunks", opts.dump_chunks, "Also write the chunk JSON here");
  process->add_flag("--keep-headers", opts.keep_headers, "Keep Header/Footer elements");
  add_chunk_flags(process, opts);
  add_config_option(process, opts);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  try {
    if (partition->parsed()) return cmd_partition(opts, in, out);
    if (chunk->parsed()) return cmd_chunk(opts, in, out);
    return cmd_process(opts, in, out, err);
  } catch (const UsageError& e) {
    err << "esgdoc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "esgdoc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "esgdoc: " << e.what() << '\n';
    return kExitPipeline;
  } catch (const std::exception& e) {
    err << "esgdoc: " << e.what() << '\n';
    return kExitPipeline;
  }
}

}  // namespace esgdoc::cli
