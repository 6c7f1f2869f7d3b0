#pragma once

#include <stdexcept>
#include <string>

namespace bshadow {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input file or word could not be parsed / fails validation.
struct MalformedInput : Error {
  using Error::Error;
};

// An operation needed an element or product outside the certified ball.
struct OutOfCertifiedBall : Error {
  using Error::Error;
};

// A hypothesis of an operation's contract was not met by the inputs.
struct HypothesisViolated : Error {
  std::string premise;
  HypothesisViolated(const std::string& which, const std::string& detail)
      : Error("hypothesis violated: " + which + ": " + detail), premise(which) {}
};

// Bug detectors: these fire only if a certified bound fails on concrete data,
// which means either the inputs lie outside their contract or the library is wrong.
struct PropositionViolated : Error {
  using Error::Error;
};
struct ClaimViolated : Error {
  int window_lo = 0, window_hi = 0;
  ClaimViolated(const std::string& msg, int lo, int hi)
      : Error(msg), window_lo(lo), window_hi(hi) {}
};
struct SeamMismatch : Error {
  using Error::Error;
};
struct NoRayWithinK : Error {
  using Error::Error;
};
struct ConsistencyViolated : Error {
  using Error::Error;
};

// Requested certification cannot be produced at the given scale.
struct NoValidWindow : Error {
  using Error::Error;
};
struct InsufficientRadius : Error {
  std::string witness;
  InsufficientRadius(const std::string& msg, std::string w)
      : Error(msg), witness(std::move(w)) {}
};
struct InsufficientSupport : Error {
  using Error::Error;
};
struct InsufficientDepth : Error {
  using Error::Error;
};
struct DepthExceedsSupport : Error {
  using Error::Error;
};
struct NotFoundWithinDepth : Error {
  using Error::Error;
};
struct PerturbationTooLarge : Error {
  using Error::Error;
};

}  // namespace bshadow
