#include "provkb/paths.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "provkb/errors.h"

#ifndef PROVKB_DATA_DIR
#define PROVKB_DATA_DIR "data"
#endif

namespace provkb {

std::filesystem::path DataDir() {
  if (const char* env = std::getenv("PROVKB_DATA_DIR"); env && *env) {
    return env;
  }
  return PROVKB_DATA_DIR;
}

std::filesystem::path DataPath(const std::string& relative) {
  return DataDir() / relative;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << contents;
}

}  // namespace provkb
