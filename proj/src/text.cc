#include "provkb/text.h"

#include <algorithm>
#include <cctype>
#include <cstdio>

namespace provkb::text {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

char32_t LowerCodePoint(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c < 0x80) return c;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c == 0x178) return 0xFF;
  if (c >= 0x100 && c <= 0x137) return (c % 2 == 0) ? c + 1 : c;
  if (c >= 0x139 && c <= 0x148) return (c % 2 == 1) ? c + 1 : c;
  if (c >= 0x14A && c <= 0x177) return (c % 2 == 0) ? c + 1 : c;
  if (c >= 0x179 && c <= 0x17E) return (c % 2 == 1) ? c + 1 : c;
  return c;
}

// Base letter for U+00C0..U+00FF, '\0' where there is none.
constexpr char kLatin1Base[64] = {
    'A', 'A', 'A', 'A', 'A', 'A', 'A', 'C', 'E', 'E', 'E', 'E', 'I',
    'I', 'I', 'I', 'D', 'N', 'O', 'O', 'O', 'O', 'O', 0,   'O', 'U',
    'U', 'U', 'U', 'Y', 0,   's', 'a', 'a', 'a', 'a', 'a', 'a', 'a',
    'c', 'e', 'e', 'e', 'e', 'i', 'i', 'i', 'i', 'd', 'n', 'o', 'o',
    'o', 'o', 'o', 0,   'o', 'u', 'u', 'u', 'u', 'y', 0,   'y'};

bool IsApostrophe(char32_t c) { return c == '\'' || c == 0x2019; }

bool IsLeadingPunct(char32_t c) {
  return c == '(' || c == '[' || c == '"' || c == 0xAB || c == 0x201C ||
         c == 0x2018;
}

bool IsTrailingPunct(char32_t c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' ||
         c == '?' || c == ')' || c == ']' || c == '"' || c == 0xBB ||
         c == 0x201D || c == 0x2026;
}

}  // namespace

std::u32string Decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    unsigned char c = s[i];
    char32_t cp;
    int extra;
    if (c < 0x80) {
      cp = c;
      extra = 0;
    } else if ((c & 0xE0) == 0xC0) {
      cp = c & 0x1F;
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      cp = c & 0x0F;
      extra = 2;
    } else if ((c & 0xF8) == 0xF0) {
      cp = c & 0x07;
      extra = 3;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + extra >= s.size()) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k <= extra; ++k) {
      unsigned char cc = s[i + k];
      if ((cc & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!ok) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

void AppendUtf8(std::string* out, char32_t cp) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string Encode(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t c : cps) AppendUtf8(&out, c);
  return out;
}

std::string Lower(std::string_view s) {
  std::u32string cps = Decode(s);
  for (char32_t& c : cps) c = LowerCodePoint(c);
  return Encode(cps);
}

std::string FoldForSort(std::string_view s) {
  std::string out;
  for (char32_t c : Decode(s)) {
    if (c >= 0xC0 && c <= 0xFF && kLatin1Base[c - 0xC0] != 0) {
      out.push_back(kLatin1Base[c - 0xC0]);
    } else if (c == 0x152) {
      out += "OE";
    } else if (c == 0x153) {
      out += "oe";
    } else {
      AppendUtf8(&out, c);
    }
  }
  std::string lowered;
  for (char ch : out) {
    lowered.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(ch))));
  }
  return lowered;
}

char InitialBucket(std::string_view s) {
  for (char ch : FoldForSort(s)) {
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      return static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    }
  }
  return '#';
}

std::string_view Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> Split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      return parts;
    }
    parts.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> SplitWhitespace(std::string_view s) {
  std::vector<std::string> parts;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) parts.emplace_back(s.substr(start, i - start));
  }
  return parts;
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

std::string NormalizeSurface(std::string_view s) {
  return Join(SplitWhitespace(Lower(s)), " ");
}

std::string TruncateCodePoints(std::string_view s, size_t max_code_points) {
  std::u32string cps = Decode(s);
  if (cps.size() <= max_code_points) return std::string(s);
  cps.resize(max_code_points);
  return Encode(cps);
}

std::vector<std::string> SplitElision(std::string_view token) {
  std::u32string cps = Decode(token);
  size_t apos = 0;
  while (apos < cps.size() && !IsApostrophe(cps[apos])) ++apos;
  if (apos == 0 || apos >= cps.size() - 1 || apos > 2) return {std::string(token)};
  std::u32string head = cps.substr(0, apos);
  for (char32_t& c : head) c = LowerCodePoint(c);
  static const std::u32string kClitics[] = {U"c", U"d", U"j", U"l", U"m",
                                            U"n", U"s", U"t", U"qu"};
  bool clitic = std::find(std::begin(kClitics), std::end(kClitics), head) !=
                std::end(kClitics);
  if (!clitic) return {std::string(token)};
  return {Encode(cps.substr(0, apos + 1)), Encode(cps.substr(apos + 1))};
}

std::vector<std::string> Tokenize(std::string_view s, bool split_punct) {
  std::vector<std::string> tokens;
  for (const std::string& word : SplitWhitespace(s)) {
    std::u32string cps = Decode(word);
    std::vector<std::string> trailing;
    if (split_punct) {
      size_t b = 0;
      while (b < cps.size() && IsLeadingPunct(cps[b])) {
        tokens.push_back(Encode(cps.substr(b, 1)));
        ++b;
      }
      size_t e = cps.size();
      while (e > b && IsTrailingPunct(cps[e - 1])) {
        trailing.push_back(Encode(cps.substr(e - 1, 1)));
        --e;
      }
      cps = cps.substr(b, e - b);
    }
    if (!cps.empty()) {
      for (std::string& part : SplitElision(Encode(cps))) {
        tokens.push_back(std::move(part));
      }
    }
    tokens.insert(tokens.end(), trailing.rbegin(), trailing.rend());
  }
  return tokens;
}

std::string JoinForms(const std::vector<std::string>& forms) {
  std::string out;
  bool glue_next = true;
  for (const std::string& form : forms) {
    bool punct = form.size() == 1 && std::string_view(",.;:!?)]").find(form[0]) !=
                                         std::string_view::npos;
    bool after_dot = !out.empty() && out.back() == '.' && form == ".";
    if (!glue_next && !punct && !after_dot) out.push_back(' ');
    out += form;
    glue_next = EndsWith(form, "'") || EndsWith(form, "\xE2\x80\x99");
  }
  return out;
}

std::string HashHex(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace provkb::text
