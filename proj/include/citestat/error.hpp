#pragma once

#include <stdexcept>
#include <string>

namespace citestat {

// Base for every error the library throws on contract violations.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (files, configs).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace citestat
