#include "exemplar/diagnostics.hpp"

namespace exemplar {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return "io-error";
    case ErrorKind::Syntax: return "syntax-error";
    case ErrorKind::UnknownSymbol: return "unknown-symbol";
    case ErrorKind::ArityMismatch: return "arity-mismatch";
    case ErrorKind::SortMismatch: return "sort-mismatch";
    case ErrorKind::Validation: return "validation-error";
    case ErrorKind::Internal: return "internal-error";
  }
  return "error";
}

std::string Diagnostic::str() const {
  std::string out = to_string(kind);
  if (pos.line > 0) {
    out += " at " + std::to_string(pos.line) + ":" + std::to_string(pos.col);
  }
  out += ": " + message;
  if (!subject.empty()) out += " [" + subject + "]";
  return out;
}

Diagnostic make_diag(ErrorKind kind, std::string message, SourcePos pos, std::string subject) {
  return Diagnostic{kind, std::move(message), pos, std::move(subject)};
}

}  // namespace exemplar
