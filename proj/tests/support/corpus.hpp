#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tcd/tables.hpp"

namespace tcd::testing {

#ifndef TCD_CORPUS_DIR
#error "TCD_CORPUS_DIR must point at tests/corpus"
#endif

inline std::string corpus_dir() { return TCD_CORPUS_DIR; }

/// Programs from every programs_*.txt file, separated by `%%` lines.
inline std::vector<std::string> load_corpus() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir())) {
    auto name = e.path().filename().string();
    if (name.starts_with("programs_") && name.ends_with(".txt")) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::string> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::string line, cur;
    auto flush = [&] {
      if (cur.find_first_not_of(" \n\t") != std::string::npos) out.push_back(cur);
      cur.clear();
    };
    while (std::getline(in, line)) {
      if (line == "%%") {
        flush();
      } else {
        cur += line + "\n";
      }
    }
    flush();
  }
  return out;
}

inline TypeEnv corpus_globals() { return load_config(corpus_dir() + "/globals.cfg").globals; }

}  // namespace tcd::testing
