#pragma once

#include <string>

namespace twinfinder {

/// Lines and columns are 1-based; a location spans [begin, end] inclusive.
struct SourceLocation {
  std::string file;
  int line_begin = 1;
  int line_end = 1;
  int col_begin = 1;
  int col_end = 1;

  bool contains(const SourceLocation& other) const {
    if (other.line_begin < line_begin || other.line_end > line_end) return false;
    if (other.line_begin == line_begin && other.col_begin < col_begin) return false;
    if (other.line_end == line_end && other.col_end > col_end) return false;
    return true;
  }

  bool operator==(const SourceLocation& other) const = default;

  std::string to_string() const;
};

}  // namespace twinfinder
