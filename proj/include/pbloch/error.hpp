// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace pbloch {

/// Invalid user or programmatic configuration (unknown ids, violated parameter bounds).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a mathematical function.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Surface pair rejected by the invertibility guard of the flattening map.
class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Coupled solve did not reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace pbloch
