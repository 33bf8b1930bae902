#pragma once

#include <stdexcept>
#include <string>

namespace vitkerr {

// Base of every error the engine raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or inconsistent input parameters (negative rates, bad grids,
// unknown config keys, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A denominator or linear system is (numerically) singular for the given
// parameters. The message names the offending detuning combination.
class DegenerateParameters : public Error {
 public:
  using Error::Error;
};

// chi is undefined (zero probe Rabi frequency in the Bloch extraction).
class UndefinedChi : public Error {
 public:
  using Error::Error;
};

// eta = Re chi / 2 Im chi diverges because Im chi vanishes.
class TransparencyDivergence : public Error {
 public:
  TransparencyDivergence(const std::string& what, int direction)
      : Error(what), direction_(direction) {}

  // Sign of the divergence (+1 or -1), 0 if Re chi also vanishes.
  int direction() const noexcept { return direction_; }

 private:
  int direction_;
};

// No transparency dip could be located in an absorption profile.
class NoTransparency : public Error {
 public:
  using Error::Error;
};

}  // namespace vitkerr
