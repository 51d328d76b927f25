#pragma once

#include <stdexcept>
#include <string>

namespace skein {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class Inadmissible : public Error {
 public:
  using Error::Error;
};

class DegenerateTheta : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NotPlanar : public Error {
 public:
  using Error::Error;
};

class NotTrivalent : public Error {
 public:
  using Error::Error;
};

class NotTriangle : public Error {
 public:
  using Error::Error;
};

class LowValence : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

}  // namespace skein
