#ifndef SCHUBLOC_ERRORS_HPP
#define SCHUBLOC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace schubloc {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto exit statuses.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed Cartan data, unknown labels, unparsable words,
// violated preconditions.
struct InvalidArgument : Error {
  using Error::Error;
};

struct InvalidCartan : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

struct NotFiniteType : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

struct RankMismatch : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

struct ResourceCapExceeded : Error {
  using Error::Error;
};

struct DivisionByZero : Error {
  using Error::Error;
};

// A class handed to an expansion routine is not in the span of the basis
// (non-GKM or inhomogeneous input).
struct NotInSpan : Error {
  using Error::Error;
};

struct NonPolynomialResult : Error {
  using Error::Error;
};

// A computed quantity broke a positivity, support or grading property that
// the theory guarantees. Always an implementation bug or corrupt input.
struct VerificationFailure : Error {
  using Error::Error;
};

}  // namespace schubloc

#endif  // SCHUBLOC_ERRORS_HPP
