#include "worldline/golden.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "worldline/parse.hpp"

namespace worldline {

namespace {

bool regen_requested() {
  const char* env = std::getenv("WORLDLINE_REGEN_GOLDEN");
  return env != nullptr && env[0] == '1';
}

std::string read_trimmed(const std::filesystem::path& file, bool& present) {
  std::ifstream in(file);
  present = static_cast<bool>(in);
  if (!present) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == ' ')) text.pop_back();
  return text;
}

GoldenResult run(const std::string& name, const std::string& actual,
                 const std::function<bool(const std::string&)>& same) {
  GoldenResult out;
  out.actual = actual;
  std::filesystem::path file = std::filesystem::path(golden_dir()) / (name + ".txt");
  bool present = false;
  out.expected = read_trimmed(file, present);
  out.matched = present && same(out.expected);
  if (!out.matched && regen_requested()) {
    std::filesystem::create_directories(file.parent_path());
    std::ofstream(file) << actual << '\n';
    out.matched = out.regenerated = true;
    out.expected = actual;
  }
  return out;
}

}  // namespace

std::string golden_dir() {
  if (const char* env = std::getenv("WORLDLINE_GOLDEN_DIR")) return env;
  return WORLDLINE_GOLDEN_DIR;
}

GoldenResult golden_compare(const std::string& name, const GradedExpr& e) {
  const Algebra* alg = e.algebra();
  return run(name, to_string(e), [&](const std::string& stored) {
    if (alg == nullptr) return stored == to_string(e);
    return expr_equal(parse_expr(*alg, stored), e);
  });
}

GoldenResult golden_compare_text(const std::string& name, const std::string& text) {
  std::string trimmed = text;
  while (!trimmed.empty() && (trimmed.back() == '\n' || trimmed.back() == ' ')) trimmed.pop_back();
  return run(name, trimmed, [&](const std::string& stored) { return stored == trimmed; });
}

}  // namespace worldline
