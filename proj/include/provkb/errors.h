#pragma once

#include <stdexcept>
#include <string>

namespace provkb {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownPrefix : public Error {
 public:
  explicit UnknownPrefix(const std::string& label)
      : Error("unknown prefix '" + label + "'"), label_(label) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

// Malformed Turtle or query text. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, int line, int column)
      : Error("syntax error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class UnsupportedFeature : public Error {
 public:
  explicit UnsupportedFeature(const std::string& feature)
      : Error("unsupported query feature: " + feature), feature_(feature) {}
  const std::string& feature() const { return feature_; }

 private:
  std::string feature_;
};

class VocabError : public Error {
 public:
  using Error::Error;
};

class RejectedReadOnly : public Error {
 public:
  explicit RejectedReadOnly(const std::string& graph)
      : Error("graph '" + graph + "' is read-only") {}
};

class NotFound : public Error {
 public:
  using Error::Error;
};

class AlreadyDecided : public Error {
 public:
  using Error::Error;
};

// CoNLL-U and other line-oriented input problems.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class NonTree : public Error {
 public:
  NonTree(const std::string& sentence_id, const std::string& why)
      : Error("sentence '" + sentence_id + "' is not a tree: " + why),
        sentence_id_(sentence_id) {}
  const std::string& sentence_id() const { return sentence_id_; }

 private:
  std::string sentence_id_;
};

class SpanOutOfBounds : public Error {
 public:
  using Error::Error;
};

class UnknownProperty : public Error {
 public:
  using Error::Error;
};

class WeightsInvalid : public Error {
 public:
  using Error::Error;
};

class UnparseablePayload : public Error {
 public:
  using Error::Error;
};

class UnknownType : public Error {
 public:
  using Error::Error;
};

}  // namespace provkb
