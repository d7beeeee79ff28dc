#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace viphon {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed UTF-8 or otherwise unusable text.
class TextError : public Error {
 public:
  using Error::Error;
};

// A word carries two or more tone marks.
class MultipleToneMarks : public Error {
 public:
  explicit MultipleToneMarks(std::string word)
      : Error("multiple tone marks in '" + word + "'"), word_(std::move(word)) {}
  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

// A word is not a well-formed Vietnamese syllable. `word_index` is set when
// the failure comes out of a multi-word call.
class ParseFailure : public Error {
 public:
  static constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

  ParseFailure(std::string word, std::string residue, std::size_t word_index = kNoIndex)
      : Error(describe(word, residue, word_index)),
        word_(std::move(word)),
        residue_(std::move(residue)),
        word_index_(word_index) {}

  const std::string& word() const noexcept { return word_; }
  const std::string& residue() const noexcept { return residue_; }
  std::size_t word_index() const noexcept { return word_index_; }

 private:
  static std::string describe(const std::string& word, const std::string& residue,
                              std::size_t index) {
    std::string msg = "cannot parse '" + word + "'";
    if (!residue.empty()) msg += " (unparsed residue '" + residue + "')";
    if (index != kNoIndex) msg += " at word " + std::to_string(index);
    return msg;
  }

  std::string word_;
  std::string residue_;
  std::size_t word_index_;
};

class RenderFailure : public Error {
 public:
  using Error::Error;
};

class UnknownComponent : public Error {
 public:
  using Error::Error;
};

class IdOutOfRange : public Error {
 public:
  using Error::Error;
};

class MalformedManifestLine : public Error {
 public:
  MalformedManifestLine(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteInput : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace viphon
