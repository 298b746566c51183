#ifndef USEG_DATA_PATHS_H_
#define USEG_DATA_PATHS_H_

#include <string>

namespace useg {

// $USEG_DATA_DIR when set and non-empty, else the data/ directory of the
// source tree this library was built from.
std::string DataDir();

// DataDir()/name.
std::string DataFile(const std::string& name);

}  // namespace useg

#endif  // USEG_DATA_PATHS_H_
