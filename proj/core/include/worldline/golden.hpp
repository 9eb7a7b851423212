#pragma once
// Golden expression files: one normalized expression (or free-form text
// block) per file, written in the parse_expr grammar.  Comparison is
// semantic for expressions and literal for text.  Files are only (re)written
// when WORLDLINE_REGEN_GOLDEN=1 is set in the environment.

#include <string>

#include "worldline/expr.hpp"

namespace worldline {

struct GoldenResult {
  bool matched = false;
  bool regenerated = false;
  std::string expected;  // stored contents, empty when the file is absent
  std::string actual;    // normal form of the value under test
};

// directory holding the <name>.txt files; WORLDLINE_GOLDEN_DIR in the
// environment overrides the baked-in source-tree location
std::string golden_dir();

GoldenResult golden_compare(const std::string& name, const GradedExpr& e);
GoldenResult golden_compare_text(const std::string& name, const std::string& text);

}  // namespace worldline
