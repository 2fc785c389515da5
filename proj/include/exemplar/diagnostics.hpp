#pragma once

#include <optional>
#include <string>
#include <vector>

namespace exemplar {

enum class ErrorKind {
  Io,
  Syntax,
  UnknownSymbol,
  ArityMismatch,
  SortMismatch,
  Validation,
  Internal,
};

const char* to_string(ErrorKind kind);

// 1-based; line 0 means "no source position available".
struct SourcePos {
  int line = 0;
  int col = 0;
};

struct Diagnostic {
  ErrorKind kind = ErrorKind::Internal;
  std::string message;
  SourcePos pos;
  std::string subject;  // printed form of the offending term/formula/form

  std::string str() const;
};

Diagnostic make_diag(ErrorKind kind, std::string message, SourcePos pos = {},
                     std::string subject = {});

// A value or a non-empty list of diagnostics.
template <typename T>
struct Result {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
  const T& operator*() const { return *value; }
  T& operator*() { return *value; }
  const T* operator->() const { return &*value; }
  T* operator->() { return &*value; }

  static Result success(T v) { return Result{std::move(v), {}}; }
  static Result failure(Diagnostic d) { return Result{std::nullopt, {std::move(d)}}; }
  static Result failure(std::vector<Diagnostic> ds) { return Result{std::nullopt, std::move(ds)}; }

  std::string diag_str() const {
    std::string out;
    for (const auto& d : diagnostics) {
      if (!out.empty()) out += '\n';
      out += d.str();
    }
    return out;
  }
};

}  // namespace exemplar
