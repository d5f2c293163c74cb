#include "kolmo/error.hpp"

namespace kolmo {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_radix: return "invalid-radix";
    case ErrorKind::malformed_numeral: return "malformed-numeral";
    case ErrorKind::alphabet_mismatch: return "alphabet-mismatch";
    case ErrorKind::truncated_stream: return "truncated-stream";
    case ErrorKind::malformed_packing: return "malformed-packing";
    case ErrorKind::empty_source: return "empty-source";
    case ErrorKind::invalid_distribution: return "invalid-distribution";
    case ErrorKind::class_mismatch: return "class-mismatch";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::external_tool: return "external-tool";
    case ErrorKind::undefined_distance: return "undefined-distance";
    case ErrorKind::unclusterable_pair: return "unclusterable-pair";
    case ErrorKind::resource_limit: return "resource-limit";
    case ErrorKind::unknown_term: return "unknown-term";
    case ErrorKind::ingestion: return "ingestion";
    case ErrorKind::decode_failure: return "decode-failure";
    case ErrorKind::invalid_format: return "invalid-format";
  }
  return "unknown";
}

}  // namespace kolmo
