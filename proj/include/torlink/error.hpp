#pragma once

#include <stdexcept>
#include <string>

namespace torlink {

enum class Errc {
  parse,
  field_mismatch,
  not_artinian,
  containment_violation,
  unclassifiable,
  normalization_failed,
  regime_mismatch,
  not_normalized,
  proper_link_required,
  dimensionally_invalid,
  singular_matrix,
  bad_input,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : Error(Errc::parse,
              "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

}  // namespace torlink
