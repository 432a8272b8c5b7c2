#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hcm {

enum class ErrorCode {
  EmptyEdgeList,
  InvalidNodeId,
  CycleDetected,
  MultipleRoots,
  UnreachableNode,
  DeclaredRootMismatch,
  UnknownNode,
  PathNotInTaxonomy,
  EmptyTruePaths,
  EmptyTruth,
  EmptyPredictions,
  EmptyRecordList,
  InvalidBeta,
  MalformedLine,
  UnknownClass,
  DuplicateRecord,
  DuplicateClassInRecord,
  InvalidPath,
  EmptyIntersection,
  KindMismatch,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library surfaces as an Error. Parse errors carry the
// 1-based line number of the offending input line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace hcm
