#ifndef USEG_ERROR_H_
#define USEG_ERROR_H_

#include <stdexcept>
#include <string>

namespace useg {

// Bad input: malformed files, invariant violations, out-of-range options.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace useg

#endif  // USEG_ERROR_H_
