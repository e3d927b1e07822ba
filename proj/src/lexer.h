#pragma once

// Tokenizer shared by the Turtle reader and the query parser.

#include <string>
#include <string_view>

namespace provkb::internal {

enum class TokenKind {
  kEnd,
  kIriRef,      // <...>, text holds the decoded IRI
  kPrefixed,    // label:local or label:, text holds it verbatim (unescaped)
  kString,      // quoted literal, text holds the decoded lexical form
  kLangTag,     // @tag (also @prefix / @base), text without '@'
  kDoubleCaret, // ^^
  kVariable,    // ?name or $name, text holds the name
  kNumber,      // integer/decimal/double, text verbatim
  kName,        // bareword without ':' ("a", "true", "SELECT", ...)
  kPunct,       // single character in text
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view input) : input_(input) {}

  Token Next();
  Token Peek();

 private:
  char Cur() const { return pos_ < input_.size() ? input_[pos_] : '\0'; }
  char At(size_t offset) const {
    return pos_ + offset < input_.size() ? input_[pos_ + offset] : '\0';
  }
  void Advance(size_t n = 1);
  void SkipSpaceAndComments();
  [[noreturn]] void Fail(const std::string& what, int line, int column) const;

  Token LexIri(int line, int column);
  Token LexString(int line, int column);
  Token LexBareword(int line, int column);
  Token LexNumber(int line, int column);

  std::string_view input_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  bool has_peeked_ = false;
  Token peeked_;
};

// Decodes Turtle local-name escapes ("\(" -> "(").
std::string UnescapeLocal(std::string_view local);

}  // namespace provkb::internal
