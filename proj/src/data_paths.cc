#include "useg/data_paths.h"

#include <cstdlib>
#include <filesystem>

namespace useg {

std::string DataDir() {
  const char* env = std::getenv("USEG_DATA_DIR");
  if (env != nullptr && *env != '\0') return env;
  return USEG_DEFAULT_DATA_DIR;
}

std::string DataFile(const std::string& name) {
  return (std::filesystem::path(DataDir()) / name).string();
}

}  // namespace useg
