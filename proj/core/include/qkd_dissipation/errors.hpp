#pragma once

#include <stdexcept>

namespace qkd {

/// Raised when a physical parameter lies outside the range where the model is defined
/// (a dissipation ratio outside [0, 1], a bias outside a scheme's reachable interval, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised by the simulator when a configuration is rejected before any pulse is processed.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace qkd
