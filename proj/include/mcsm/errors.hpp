#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mcsm {

/// Malformed or inconsistent user input (unknown ids, bad rationals, loops...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured scale cap would be exceeded.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::size_t required, std::size_t cap)
      : std::runtime_error(what + " (required " + std::to_string(required) +
                           ", cap " + std::to_string(cap) + ")"),
        base_(what),
        required_(required),
        cap_(cap) {}

  std::size_t required() const noexcept { return required_; }
  std::size_t cap() const noexcept { return cap_; }

  CapExceeded with_context(const std::string& prefix) const {
    return CapExceeded(prefix + base_, required_, cap_);
  }

 private:
  std::string base_;
  std::size_t required_;
  std::size_t cap_;
};

/// The model in hand does not satisfy an axiom an operation relies on.
class ModelViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation precondition (e.g. s12 > min(s1, s2)).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mcsm
