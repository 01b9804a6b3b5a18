#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fsubtype {

/// Base class of every error raised by the kernel.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A type value carries a de Bruijn index that escapes its binders, or an
/// operation was handed a body with the wrong number of open indices.
class MalformedType : public Error {
 public:
  using Error::Error;
};

struct SourcePos {
  std::size_t offset = 0;  // 0-based byte offset
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based
};

class ParseError : public Error {
 public:
  ParseError(SourcePos pos, std::vector<std::string> expected, std::string found,
             std::string message = {});

  const SourcePos& pos() const noexcept { return pos_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  SourcePos pos_;
  std::vector<std::string> expected_;
  std::string found_;
};

/// A derivation transformer or checker was called outside its contract
/// (ill-formed environment, mismatched middle type, absent pivot, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The root judgment of a derivation is not well scoped.
class ScopingError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A fact that holds for every valid derivation was found false. Seeing this
/// means the kernel itself is wrong.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace fsubtype
