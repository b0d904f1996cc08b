#pragma once

#include <string>

namespace sage {

// Directory holding the shipped PDDL domains and config tables. Defaults to
// the source-tree assets directory baked in at build time; the SAGE_ASSETS
// environment variable overrides it.
std::string asset_dir();

std::string asset_path(const std::string& relative);

std::string read_text_file(const std::string& path);

}  // namespace sage
