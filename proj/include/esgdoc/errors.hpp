#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace esgdoc {

// Base for every failure the library reports. Callers that only care about
// "the document could not be processed" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : Error(what + " at byte " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

class UnsupportedVersionError : public Error {
 public:
  explicit UnsupportedVersionError(long long version)
      : Error("unsupported schema_version " + std::to_string(version)),
        version_(version) {}
  long long version() const noexcept { return version_; }

 private:
  long long version_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::size_t index, const std::string& what)
      : Error("block " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class EncodingError : public Error {
 public:
  explicit EncodingError(std::size_t byte_offset)
      : Error("invalid UTF-8 at byte " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

class TilingError : public Error {
 public:
  TilingError(int row, int col, const std::string& what)
      : Error("table tiling violation at (" + std::to_string(row) + "," +
              std::to_string(col) + "): " + what),
        row_(row),
        col_(col) {}
  int row() const noexcept { return row_; }
  int col() const noexcept { return col_; }

 private:
  int row_;
  int col_;
};

class CaptionError : public Error {
 public:
  CaptionError(std::string element_id, const std::string& what)
      : Error("captioning " + element_id + ": " + what),
        element_id_(std::move(element_id)) {}
  const std::string& element_id() const noexcept { return element_id_; }

 private:
  std::string element_id_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace esgdoc
