#ifndef REWLANG_TEST_SUPPORT_H
#define REWLANG_TEST_SUPPORT_H

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "parser.h"
#include "printer.h"

namespace rewlang::test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus_path(const std::string& name) {
  return std::string(REWLANG_CORPUS_DIR) + "/" + name;
}

inline std::string fixture_path(const std::string& name) {
  return std::string(REWLANG_FIXTURE_DIR) + "/" + name;
}

inline Program corpus(const std::string& name) {
  return parse_program(read_file(corpus_path(name)), name);
}

inline std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(REWLANG_CORPUS_DIR))
    if (e.path().extension() == ".trs") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

inline Term query(const Program& p, const std::string& text) { return parse_query(text, p); }

}  // namespace rewlang::test

#endif
