#pragma once

#include <stdexcept>
#include <string>

namespace esampling {

// Thrown when a constraint cannot be met by any feasible sampling interval
// (e.g. a fidelity bound below what the fastest rate achieves, or a Nyquist
// interval shorter than the acquisition time).
class infeasible_error : public std::runtime_error {
 public:
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace esampling
