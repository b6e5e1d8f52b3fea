#pragma once

#include <stdexcept>
#include <string>

namespace focus {

enum class ErrorCode {
  kInvalidArgument,
  kConfig,
  kIo,
  kEmptyCorpus,
  kEmptyTable,
  kNoSeeds,
  kSeedsUnreachable,
  kNoSeedPages,
  kManifestInvalid,
  kParamInvalid,
  kEmptyRun,
  kParseFailure,
};

const char* to_string(ErrorCode code);

// Run-level failure. Per-URL fetch problems use FetchError instead and never
// abort a crawl on their own.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace focus
