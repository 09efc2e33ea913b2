#pragma once

#include <stdexcept>
#include <string>

namespace ugalearn {

/// Raised when an input is valid but exceeds what this implementation is
/// willing to compute exhaustively (e.g. schema analysis past n = 24).
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ugalearn
