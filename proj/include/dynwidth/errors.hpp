#pragma once

#include <stdexcept>
#include <string>

namespace dynwidth {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Point id already live.
struct DuplicateId : Error {
  using Error::Error;
};

// Point id not live (or halfplane id unknown).
struct UnknownId : Error {
  using Error::Error;
};

// Hull query on an empty point set.
struct EmptyHull : Error {
  using Error::Error;
};

// Side handle that is no longer an edge of the current hull.
struct StaleSide : Error {
  using Error::Error;
};

struct DuplicateSide : Error {
  using Error::Error;
};

struct UnknownSide : Error {
  using Error::Error;
};

// Distance query against an empty halfplane set.
struct NoHalfplanes : Error {
  using Error::Error;
};

// Best-effort detection of a query point outside the common intersection.
struct PreconditionViolated : Error {
  using Error::Error;
};

// Width-by-definition oracle asked about a degenerate hull.
struct DegenerateHull : Error {
  using Error::Error;
};

// Trace text rejected; carries the 1-based offending line.
struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& what_)
      : Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

}  // namespace dynwidth
