#include "focus/errors.hpp"

namespace focus {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kEmptyCorpus: return "empty_corpus";
    case ErrorCode::kEmptyTable: return "empty_table";
    case ErrorCode::kNoSeeds: return "no_seeds";
    case ErrorCode::kSeedsUnreachable: return "seeds_unreachable";
    case ErrorCode::kNoSeedPages: return "no_seed_pages";
    case ErrorCode::kManifestInvalid: return "manifest_invalid";
    case ErrorCode::kParamInvalid: return "param_invalid";
    case ErrorCode::kEmptyRun: return "empty_run";
    case ErrorCode::kParseFailure: return "parse_failure";
  }
  return "unknown";
}

}  // namespace focus
