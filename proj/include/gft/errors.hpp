#pragma once

#include <stdexcept>
#include <string>

namespace gft {

// Base of every error the library raises. Callers that only care about
// "something in the transform stack failed" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SignatureMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class NotImaginary : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class UnsupportedSignature : public Error {
 public:
  using Error::Error;
};

class NotSeparable : public Error {
 public:
  using Error::Error;
};

class OffGridShift : public Error {
 public:
  using Error::Error;
};

class MisalignedScale : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gft
