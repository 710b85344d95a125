// Exception hierarchy shared by every conjint module.

#ifndef CONJINT_ERRORS_HPP_
#define CONJINT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace conjint {

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A letter outside the alphabet, an unknown generator name, bad exponent.
  class MalformedWord : public Error {
   public:
    using Error::Error;
  };

  // An enumeration or search would exceed a configured resource cap.
  class ResourceCapExceeded : public Error {
   public:
    using Error::Error;
  };

  // Breadth-first geodesic search ran past the configured radius cap.
  class RadiusCapExceeded : public ResourceCapExceeded {
   public:
    using ResourceCapExceeded::ResourceCapExceeded;
  };

  class UnsupportedPresentation : public Error {
   public:
    using Error::Error;
  };

  class InvalidConfig : public Error {
   public:
    using Error::Error;
  };

  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

  class InvalidConjugator : public PreconditionError {
   public:
    using PreconditionError::PreconditionError;
  };

  // Raised when a computation contradicts a proven bound (pigeonhole in the
  // loop splitting, the width decomposition search). Never caught internally.
  class InternalConsistencyError : public Error {
   public:
    using Error::Error;
  };

}  // namespace conjint

#endif  // CONJINT_ERRORS_HPP_
