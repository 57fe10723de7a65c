#pragma once

#include <stdexcept>
#include <string>

namespace ctwist {

enum class Errc {
  NotContact,
  NoReeb,
  BadParameter,
  Degenerate,
  OmegaDegenerate,
  InvalidDeformation,
  InvalidConnection,
  NotSPD,
  NotSymplectic,
  SingularDenominator,
  NonPositiveT,
  NotInE,
  NoConvergence,
  DimensionMismatch,
  ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace ctwist
