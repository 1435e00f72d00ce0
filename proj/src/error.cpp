#include "compactify/error.hpp"

namespace compactify {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSystem: return "InvalidSystem";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidPresentation: return "InvalidPresentation";
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::InvalidMap: return "InvalidMap";
    case ErrorKind::GroundMismatch: return "GroundMismatch";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::InvalidChain: return "InvalidChain";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::EmptyAtom: return "EmptyAtom";
    case ErrorKind::NotOnto: return "NotOnto";
    case ErrorKind::AtomizationInvalid: return "AtomizationInvalid";
    case ErrorKind::ConditionFails: return "ConditionFails";
    case ErrorKind::NotFirstKind: return "NotFirstKind";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace compactify
