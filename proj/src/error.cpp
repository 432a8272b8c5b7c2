#include "hcm/error.hpp"

namespace hcm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyEdgeList: return "EmptyEdgeList";
    case ErrorCode::InvalidNodeId: return "InvalidNodeId";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::UnreachableNode: return "UnreachableNode";
    case ErrorCode::DeclaredRootMismatch: return "DeclaredRootMismatch";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::PathNotInTaxonomy: return "PathNotInTaxonomy";
    case ErrorCode::EmptyTruePaths: return "EmptyTruePaths";
    case ErrorCode::EmptyTruth: return "EmptyTruth";
    case ErrorCode::EmptyPredictions: return "EmptyPredictions";
    case ErrorCode::EmptyRecordList: return "EmptyRecordList";
    case ErrorCode::InvalidBeta: return "InvalidBeta";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::UnknownClass: return "UnknownClass";
    case ErrorCode::DuplicateRecord: return "DuplicateRecord";
    case ErrorCode::DuplicateClassInRecord: return "DuplicateClassInRecord";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::KindMismatch: return "KindMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> line)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      line_(line) {}

}  // namespace hcm
