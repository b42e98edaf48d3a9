#pragma once

#include <stdexcept>
#include <string>

namespace majdyn {

enum class Errc {
  invalid_size,
  invalid_parameter,
  undefined_partition,
  size_cap,
  parse,
  io,
};

const char* to_string(Errc code) noexcept;

/// Error raised by every library operation. The code is what callers
/// (the C API in particular) dispatch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace majdyn
