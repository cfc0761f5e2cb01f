#pragma once

#include <string>
#include <vector>

namespace memdiff {

// A structured hypothesis/config violation. `field` is the config path
// ("phi.m", "kernel.kappa", ...), `reason` a short machine-greppable tag.
struct Violation {
  std::string field;
  std::string reason;
  std::string message;
};

using Violations = std::vector<Violation>;

}  // namespace memdiff
