#pragma once

#include <stdexcept>
#include <string>

namespace kolmo {

enum class ErrorKind {
  invalid_radix,
  malformed_numeral,
  alphabet_mismatch,
  truncated_stream,
  malformed_packing,
  empty_source,
  invalid_distribution,
  class_mismatch,
  out_of_range,
  invalid_parameter,
  external_tool,
  undefined_distance,
  unclusterable_pair,
  resource_limit,
  unknown_term,
  ingestion,
  decode_failure,
  invalid_format,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the toolkit carries a kind so callers (the CLI in
// particular) can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kolmo
