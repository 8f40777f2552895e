#pragma once

#include <stdexcept>
#include <string>

namespace drs {

enum class ErrorKind {
  // mesh construction / IO
  UnpairedSide,
  LengthMismatch,
  TriangleInequalityViolated,
  NonOrientable,
  Disconnected,
  HasBoundary,
  ParseError,
  // topology
  GenusZero,
  NotClosed,
  // harmonic / periods
  MissingImaginaryPart,
  ZeroWeightEdge,
  SolverFailure,
  NotHarmonic,
  SingularBlock,
  ConsistencyFailure,
  // abelian
  CoincidentPoles,
  BrokenChain,
  NotAdmissible,
  TooLarge,
  RankAmbiguous,
  // quad
  NotDelaunay,
  NonPositiveQuadArea,
  DegenerateDiagonal,
  // generators
  DegenerateEta,
  // misc
  InvalidArgument,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

} // namespace drs
