#pragma once

#include <filesystem>
#include <string>

namespace provkb {

// Directory holding the shipped vocabulary, rules, gazetteer and fixtures.
// PROVKB_DATA_DIR in the environment overrides the build-time location.
std::filesystem::path DataDir();
std::filesystem::path DataPath(const std::string& relative);

// Whole-file read. Throws provkb::Error if the file cannot be opened.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, const std::string& contents);

}  // namespace provkb
