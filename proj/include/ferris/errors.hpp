#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace ferris {

// Error categories map onto CLI exit codes (config -> 2, numeric -> 3, io -> 4).
class Error : public std::runtime_error {
public:
  enum class Kind { config, numeric, io };

  Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

[[noreturn]] inline void throw_config(const std::string& msg) {
  throw Error(Error::Kind::config, msg);
}
[[noreturn]] inline void throw_numeric(const std::string& msg) {
  throw Error(Error::Kind::numeric, msg);
}
[[noreturn]] inline void throw_io(const std::string& msg) {
  throw Error(Error::Kind::io, msg);
}

// Non-fatal diagnostics (precondition soft violations, marginal sampling, ...).
// Default handler prints to stderr; tests may swap it out.
using WarnHandler = std::function<void(const std::string&)>;
WarnHandler set_warn_handler(WarnHandler handler);
void warn(const std::string& msg);

}  // namespace ferris
