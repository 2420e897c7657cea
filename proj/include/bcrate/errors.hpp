#pragma once

#include <stdexcept>
#include <string>

namespace bcrate {

/// Thrown when a computation would exceed a configured size ceiling. `cap()` names the ceiling.
class ResourceCapError : public std::runtime_error {
 public:
  ResourceCapError(std::string cap, const std::string& what) : std::runtime_error(what), cap_(std::move(cap)) {}
  const std::string& cap() const { return cap_; }

 private:
  std::string cap_;
};

}  // namespace bcrate
