#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dsm {

enum class ErrorKind {
  Io,       // unreadable/unwritable files
  Parse,    // malformed input data
  Config,   // invalid or inconsistent configuration
  Corrupt,  // damaged model container
  Oov,      // word not in the model vocabulary
  Eval,     // evaluation cannot proceed (coverage, degenerate input)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Carries the missing word so callers can turn a lookup failure into a
// skipped pair instead of a fatal error.
class OovError : public Error {
 public:
  explicit OovError(std::string word)
      : Error(ErrorKind::Oov, "out-of-vocabulary word: " + word),
        word_(std::move(word)) {}

  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

}  // namespace dsm
