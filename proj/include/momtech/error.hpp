#pragma once

#include <stdexcept>
#include <string>

namespace momtech {

/// Failure categories. Each maps onto one process exit code in the CLI.
enum class ErrorKind {
  Parse,            // malformed input text
  Structural,       // well-formed text describing an impossible object
  Domain,           // interval operation outside its domain (log of <=0, 1/[..0..])
  Precondition,     // operation called outside its documented range
  Degenerate,       // flat or coincident geometric data
  Unsupported,      // outside declared scope (e.g. Mom-4)
  Uncertifiable,    // enclosure too wide to decide a comparison
  AmbiguousSpectrum,
  Internal,         // two independent computations disagree
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace momtech
