#pragma once

#include <stdexcept>
#include <string>

namespace tileforge {

// Root of every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed region description or graph text.
class parse_error : public error {
 public:
  using error::error;
};

// Region parameters that fail a parameter-level constraint.
class spec_error : public error {
 public:
  using error::error;
};

// A caller broke an operation's documented precondition.
class precondition_error : public error {
 public:
  using error::error;
};

// Exhaustive enumeration would exceed its configured work budget.
class budget_exceeded : public error {
 public:
  using error::error;
};

enum class geometry_failure {
  parity,                 // the far boundary diagonal passes through black squares
  alignment,              // western and eastern vertices are not on one horizontal line
  boundary_intersection,  // the boundary is not a simple closed curve
  non_bipartite,          // coloring propagation found an odd cycle
  disconnected,           // some cell is unreachable from the top row
  profile_mismatch,       // cell census disagrees with the parameter-level profile
  deformation             // sheared region lost or gained an adjacency
};

inline const char* to_string(geometry_failure f) {
  switch (f) {
    case geometry_failure::parity: return "parity";
    case geometry_failure::alignment: return "alignment";
    case geometry_failure::boundary_intersection: return "boundary_intersection";
    case geometry_failure::non_bipartite: return "non_bipartite";
    case geometry_failure::disconnected: return "disconnected";
    case geometry_failure::profile_mismatch: return "profile_mismatch";
    case geometry_failure::deformation: return "deformation";
  }
  return "unknown";
}

class geometry_error : public error {
 public:
  geometry_error(geometry_failure reason, const std::string& what)
      : error(std::string(to_string(reason)) + ": " + what), reason_(reason) {}

  geometry_failure reason() const noexcept { return reason_; }

 private:
  geometry_failure reason_;
};

}  // namespace tileforge
