#pragma once

#include <stdexcept>
#include <string>

namespace qhl {

enum class Errc {
  Parse,
  DivisionByZero,
  UnknownVariable,
  EvaluationPole,
  NonlinearSystem,
  SingularMetric,
  FlatMetric,
  Unsupported,
  NotAnAlgebra,
  WrongCase,
  PdeMismatch,
  IrrationalDensity,
  InvalidArgument,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::Parse: return "Parse";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::EvaluationPole: return "EvaluationPole";
    case Errc::NonlinearSystem: return "NonlinearSystem";
    case Errc::SingularMetric: return "SingularMetric";
    case Errc::FlatMetric: return "FlatMetric";
    case Errc::Unsupported: return "Unsupported";
    case Errc::NotAnAlgebra: return "NotAnAlgebra";
    case Errc::WrongCase: return "WrongCase";
    case Errc::PdeMismatch: return "PdeMismatch";
    case Errc::IrrationalDensity: return "IrrationalDensity";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace qhl
