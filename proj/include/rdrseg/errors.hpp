#ifndef RDRSEG_ERRORS_HPP
#define RDRSEG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rdrseg {

// Coarse error class, used by the CLI to pick an exit code:
// usage -> 1, data -> 2, internal -> 3.
enum class ErrorKind { Usage, Data, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct EmptyInput : Error {
  explicit EmptyInput(std::string m) : Error(ErrorKind::Data, std::move(m)) {}
};

struct MalformedWord : Error {
  explicit MalformedWord(std::string m) : Error(ErrorKind::Data, std::move(m)) {}
};

struct InvalidTagSequence : Error {
  explicit InvalidTagSequence(std::string m) : Error(ErrorKind::Data, std::move(m)) {}
};

struct IoError : Error {
  explicit IoError(std::string m) : Error(ErrorKind::Data, std::move(m)) {}
};

struct EmptyLexicon : Error {
  explicit EmptyLexicon(std::string m) : Error(ErrorKind::Data, std::move(m)) {}
};

struct AlignmentError : Error {
  AlignmentError(std::size_t sentence_index, std::string m)
      : Error(ErrorKind::Data, std::move(m)), sentence_index(sentence_index) {}
  std::size_t sentence_index;
};

struct ModelParseError : Error {
  ModelParseError(std::size_t line, std::string m)
      : Error(ErrorKind::Data, std::move(m)), line(line) {}
  std::size_t line;
};

struct ConfigError : Error {
  explicit ConfigError(std::string m) : Error(ErrorKind::Usage, std::move(m)) {}
};

struct InvalidNode : Error {
  explicit InvalidNode(std::string m) : Error(ErrorKind::Internal, std::move(m)) {}
};

struct InternalError : Error {
  explicit InternalError(std::string m) : Error(ErrorKind::Internal, std::move(m)) {}
};

}  // namespace rdrseg

#endif  // RDRSEG_ERRORS_HPP
