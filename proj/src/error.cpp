#include "pointing/error.hpp"

namespace pointing {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnboundedSection: return "UnboundedSection";
    case ErrorCode::OffPlane: return "OffPlane";
    case ErrorCode::OutOfExtent: return "OutOfExtent";
    case ErrorCode::InvalidScene: return "InvalidScene";
    case ErrorCode::UnknownSupport: return "UnknownSupport";
    case ErrorCode::NoStablePlacement: return "NoStablePlacement";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::EmptyScene: return "EmptyScene";
    case ErrorCode::NoPointingTarget: return "NoPointingTarget";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DegenerateTable: return "DegenerateTable";
    case ErrorCode::InvalidCounts: return "InvalidCounts";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Error";
}

}  // namespace pointing
