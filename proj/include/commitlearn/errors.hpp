#pragma once

#include <stdexcept>
#include <string>

namespace commitlearn {

// Base of every error the library throws on purpose.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A proven bound or internal invariant failed. Indicates a bug, never bad input.
struct assertion_violation : error {
  using error::error;
};

struct insufficient_vertices : error {
  using error::error;
};

struct degenerate_geometry : error {
  using error::error;
};

struct orientation_error : error {
  using error::error;
};

struct depth_exceeded : error {
  using error::error;
};

struct fully_covered : error {
  using error::error;
};

struct retry_budget_exhausted : error {
  using error::error;
};

struct parse_error : error {
  using error::error;
};

struct domain_error : error {
  using error::error;
};

}  // namespace commitlearn
