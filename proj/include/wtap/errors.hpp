#pragma once

#include <stdexcept>
#include <string>

namespace wtap {

// Malformed instance text, bad parameters, out-of-range ids.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A request that no link can ever cover.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// An internal guarantee of the algorithms was broken.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

// Exit codes shared by the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitBadInput = 4;

}  // namespace wtap
