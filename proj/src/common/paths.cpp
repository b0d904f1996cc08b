#include "sage/common/paths.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef SAGE_SOURCE_ASSETS
#define SAGE_SOURCE_ASSETS "assets"
#endif

namespace sage {

std::string asset_dir() {
  if (const char* env = std::getenv("SAGE_ASSETS")) return env;
  return SAGE_SOURCE_ASSETS;
}

std::string asset_path(const std::string& relative) {
  return asset_dir() + "/" + relative;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sage
