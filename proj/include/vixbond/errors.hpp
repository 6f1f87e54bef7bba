#ifndef VIXBOND_ERRORS_HPP_
#define VIXBOND_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace vixbond {

// Root of every error thrown by the library. Callers that only care about
// "did the pipeline fail" catch this; the subclasses carry the category.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t row)
      : Error(msg), row_(row) {}
  // 1-based data row (header excluded); 0 when the header itself is bad.
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

class EmptySeriesError : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularDesignError : public Error {
 public:
  using Error::Error;
};

class ZeroVarianceError : public Error {
 public:
  using Error::Error;
};

class SampleSizeError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& msg, std::size_t step)
      : Error(msg), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class SchemaVersionError : public Error {
 public:
  using Error::Error;
};

}  // namespace vixbond

#endif  // VIXBOND_ERRORS_HPP_
