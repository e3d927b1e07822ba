#pragma once

// UTF-8 helpers shared by the text-facing modules.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace provkb::text {

// Decodes UTF-8 into code points. Invalid bytes decode as U+FFFD.
std::u32string Decode(std::string_view utf8);
std::string Encode(std::u32string_view code_points);
void AppendUtf8(std::string* out, char32_t cp);

// Lowercases ASCII, Latin-1 and Latin Extended-A letters. Accents are kept.
std::string Lower(std::string_view utf8);

// Strips diacritics from Latin letters and uppercases the result's first
// letter; used for alphabetic bucketing ("Écla" -> 'E').
std::string FoldForSort(std::string_view utf8);
char InitialBucket(std::string_view utf8);

std::string_view Trim(std::string_view s);
std::vector<std::string> Split(std::string_view s, char sep);
std::vector<std::string> SplitWhitespace(std::string_view s);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);
bool StartsWith(std::string_view s, std::string_view prefix);
bool EndsWith(std::string_view s, std::string_view suffix);

// Collapses whitespace runs to a single space after trimming and lowercasing.
std::string NormalizeSurface(std::string_view s);

// Truncates to at most max_code_points code points.
std::string TruncateCodePoints(std::string_view s, size_t max_code_points);

// Splits a whitespace token of French text into its elided clitic and the
// remainder ("l'Oréal" -> {"l'", "Oréal"}). Tokens without elision are
// returned unchanged.
std::vector<std::string> SplitElision(std::string_view token);

// Tokens of a gazetteer surface or raw text fragment: whitespace split,
// elision split, and (when split_punct) leading/trailing punctuation split.
std::vector<std::string> Tokenize(std::string_view s, bool split_punct);

// Joins token forms back into display text, without a space after elided
// clitics ("J'" + "adore" -> "J'adore").
std::string JoinForms(const std::vector<std::string>& forms);

// 64-bit FNV-1a, hex encoded.
std::string HashHex(std::string_view data);

}  // namespace provkb::text
