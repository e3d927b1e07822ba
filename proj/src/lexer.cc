#include "lexer.h"

#include <cctype>

#include "provkb/errors.h"
#include "provkb/text.h"

namespace provkb::internal {

namespace {

bool IsNameStart(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == ':' || c >= 0x80;
}

bool IsNameChar(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c == ':' ||
         c == '%' || c >= 0x80;
}

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

void Lexer::Advance(size_t n) {
  for (size_t i = 0; i < n && pos_ < input_.size(); ++i) {
    if (input_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
}

void Lexer::Fail(const std::string& what, int line, int column) const {
  throw SyntaxError(what, line, column);
}

void Lexer::SkipSpaceAndComments() {
  while (pos_ < input_.size()) {
    char c = Cur();
    if (std::isspace(static_cast<unsigned char>(c))) {
      Advance();
    } else if (c == '#') {
      while (pos_ < input_.size() && Cur() != '\n') Advance();
    } else {
      break;
    }
  }
}

Token Lexer::Peek() {
  if (!has_peeked_) {
    peeked_ = Next();
    has_peeked_ = true;
  }
  return peeked_;
}

Token Lexer::Next() {
  if (has_peeked_) {
    has_peeked_ = false;
    return peeked_;
  }
  SkipSpaceAndComments();
  int line = line_;
  int column = column_;
  Token tok;
  tok.line = line;
  tok.column = column;
  if (pos_ >= input_.size()) {
    tok.kind = TokenKind::kEnd;
    return tok;
  }
  unsigned char c = Cur();
  if (c == '<') return LexIri(line, column);
  if (c == '"' || c == '\'') return LexString(line, column);
  if (c == '@') {
    Advance();
    std::string tag;
    while (std::isalnum(static_cast<unsigned char>(Cur())) ||
           (Cur() == '-' && !tag.empty())) {
      tag.push_back(Cur());
      Advance();
    }
    if (tag.empty()) Fail("expected language tag or directive after '@'", line, column);
    tok.kind = TokenKind::kLangTag;
    tok.text = std::move(tag);
    return tok;
  }
  if (c == '^' && At(1) == '^') {
    Advance(2);
    tok.kind = TokenKind::kDoubleCaret;
    tok.text = "^^";
    return tok;
  }
  if ((c == '?' || c == '$') &&
      (std::isalnum(static_cast<unsigned char>(At(1))) || At(1) == '_' ||
       static_cast<unsigned char>(At(1)) >= 0x80)) {
    Advance();
    std::string name;
    while (std::isalnum(static_cast<unsigned char>(Cur())) || Cur() == '_' ||
           static_cast<unsigned char>(Cur()) >= 0x80) {
      name.push_back(Cur());
      Advance();
    }
    tok.kind = TokenKind::kVariable;
    tok.text = std::move(name);
    return tok;
  }
  if (std::isdigit(c) ||
      ((c == '+' || c == '-') && std::isdigit(static_cast<unsigned char>(At(1))))) {
    return LexNumber(line, column);
  }
  if (IsNameStart(c)) return LexBareword(line, column);
  Advance();
  tok.kind = TokenKind::kPunct;
  tok.text = std::string(1, static_cast<char>(c));
  return tok;
}

Token Lexer::LexIri(int line, int column) {
  Advance();  // '<'
  std::string iri;
  while (true) {
    if (pos_ >= input_.size()) Fail("unterminated IRI", line, column);
    char c = Cur();
    if (c == '>') {
      Advance();
      break;
    }
    if (c == '\n' || c == ' ' || c == '<' || c == '"') {
      Fail("invalid character in IRI", line_, column_);
    }
    if (c == '\\') {
      char kind = At(1);
      int digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
      if (digits == 0) Fail("invalid escape in IRI", line_, column_);
      char32_t cp = 0;
      for (int i = 0; i < digits; ++i) {
        int v = HexValue(At(2 + i));
        if (v < 0) Fail("invalid \\u escape in IRI", line_, column_);
        cp = cp * 16 + v;
      }
      text::AppendUtf8(&iri, cp);
      Advance(2 + digits);
      continue;
    }
    iri.push_back(c);
    Advance();
  }
  Token tok;
  tok.kind = TokenKind::kIriRef;
  tok.text = std::move(iri);
  tok.line = line;
  tok.column = column;
  return tok;
}

Token Lexer::LexString(int line, int column) {
  char quote = Cur();
  bool long_form = At(1) == quote && At(2) == quote;
  Advance(long_form ? 3 : 1);
  std::string value;
  while (true) {
    if (pos_ >= input_.size()) Fail("unterminated string", line, column);
    char c = Cur();
    if (long_form) {
      if (c == quote && At(1) == quote && At(2) == quote) {
        Advance(3);
        break;
      }
    } else {
      if (c == quote) {
        Advance();
        break;
      }
      if (c == '\n') Fail("newline in string", line_, column_);
    }
    if (c == '\\') {
      char e = At(1);
      int digits = 0;
      switch (e) {
        case 't': value.push_back('\t'); break;
        case 'b': value.push_back('\b'); break;
        case 'n': value.push_back('\n'); break;
        case 'r': value.push_back('\r'); break;
        case 'f': value.push_back('\f'); break;
        case '"': value.push_back('"'); break;
        case '\'': value.push_back('\''); break;
        case '\\': value.push_back('\\'); break;
        case 'u': digits = 4; break;
        case 'U': digits = 8; break;
        default: Fail("invalid string escape", line_, column_);
      }
      if (digits > 0) {
        char32_t cp = 0;
        for (int i = 0; i < digits; ++i) {
          int v = HexValue(At(2 + i));
          if (v < 0) Fail("invalid \\u escape", line_, column_);
          cp = cp * 16 + v;
        }
        text::AppendUtf8(&value, cp);
        Advance(2 + digits);
      } else {
        Advance(2);
      }
      continue;
    }
    value.push_back(c);
    Advance();
  }
  Token tok;
  tok.kind = TokenKind::kString;
  tok.text = std::move(value);
  tok.line = line;
  tok.column = column;
  return tok;
}

Token Lexer::LexNumber(int line, int column) {
  std::string num;
  if (Cur() == '+' || Cur() == '-') {
    num.push_back(Cur());
    Advance();
  }
  while (std::isdigit(static_cast<unsigned char>(Cur()))) {
    num.push_back(Cur());
    Advance();
  }
  if (Cur() == '.' && std::isdigit(static_cast<unsigned char>(At(1)))) {
    num.push_back('.');
    Advance();
    while (std::isdigit(static_cast<unsigned char>(Cur()))) {
      num.push_back(Cur());
      Advance();
    }
  }
  if ((Cur() == 'e' || Cur() == 'E') &&
      (std::isdigit(static_cast<unsigned char>(At(1))) ||
       ((At(1) == '+' || At(1) == '-') &&
        std::isdigit(static_cast<unsigned char>(At(2)))))) {
    num.push_back(Cur());
    Advance();
    if (Cur() == '+' || Cur() == '-') {
      num.push_back(Cur());
      Advance();
    }
    while (std::isdigit(static_cast<unsigned char>(Cur()))) {
      num.push_back(Cur());
      Advance();
    }
  }
  Token tok;
  tok.kind = TokenKind::kNumber;
  tok.text = std::move(num);
  tok.line = line;
  tok.column = column;
  return tok;
}

Token Lexer::LexBareword(int line, int column) {
  size_t start = pos_;
  while (pos_ < input_.size()) {
    unsigned char c = Cur();
    if (c == '\\' && At(1) != '\0' && pos_ > start) {
      Advance(2);
      continue;
    }
    if (!IsNameChar(c)) break;
    Advance();
  }
  // A trailing '.' terminates the statement rather than the name.
  size_t end = pos_;
  while (end > start + 1 && input_[end - 1] == '.' && input_[end - 2] != '\\') {
    --end;
  }
  if (end < pos_) {
    // Rewind over the dots; they are plain ASCII so columns move back 1:1.
    column_ -= static_cast<int>(pos_ - end);
    pos_ = end;
  }
  Token tok;
  tok.text = std::string(input_.substr(start, end - start));
  tok.kind = tok.text.find(':') == std::string::npos ? TokenKind::kName
                                                     : TokenKind::kPrefixed;
  tok.line = line;
  tok.column = column;
  return tok;
}

std::string UnescapeLocal(std::string_view local) {
  std::string out;
  for (size_t i = 0; i < local.size(); ++i) {
    if (local[i] == '\\' && i + 1 < local.size()) {
      out.push_back(local[++i]);
    } else {
      out.push_back(local[i]);
    }
  }
  return out;
}

}  // namespace provkb::internal
