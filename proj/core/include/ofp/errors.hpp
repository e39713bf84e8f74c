#pragma once

#include <stdexcept>
#include <string>

namespace ofp {

// Invalid caller-supplied value (non-positive range, point outside region, ...).
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Two header locations coincide, so no back direction exists.
class DegenerateGeometryError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Scenario cannot be built (too few nodes, unknown preset, bad config key).
class ScenarioError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The simulator reached a state its own bookkeeping rules out.
class ConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace ofp
