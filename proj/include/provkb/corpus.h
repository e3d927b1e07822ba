#pragma once

// Documents of dependency-parsed sentences (CoNLL-U), markup stripping,
// raw-text tokenization and gold annotations for evaluation.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "provkb/entity_type.h"
#include "provkb/rdf.h"
#include "provkb/store.h"
#include "provkb/vocab.h"

namespace provkb::corpus {

struct Token {
  int index = 0;  // 1-based
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;
  std::string feats;
  int head = 0;  // 0 = root
  std::string deprel;
  std::string deps;
  std::string misc;
};

struct Sentence {
  std::string id;
  std::string text;
  std::vector<Token> tokens;
  // False for raw text split without a parse: heads and labels are void.
  bool parsed = true;

  int size() const { return static_cast<int>(tokens.size()); }
  // 1-based access.
  const Token& at(int index) const { return tokens.at(static_cast<size_t>(index - 1)); }
  std::vector<int> Children(int index) const;
  // Forms of tokens [start, end] joined for display.
  std::string SpanText(int start, int end) const;
};

struct Document {
  std::string id;
  std::string source_url;
  std::optional<store::CalendarDate> date;
  std::vector<Sentence> sentences;

  const Sentence* Find(const std::string& sentence_id) const;
};

// Token range, 1-based and inclusive.
struct Span {
  int start = 1;
  int end = 1;

  int length() const { return end - start + 1; }
  bool Overlaps(const Span& o) const { return start <= o.end && o.start <= end; }
  std::string ToString() const;  // "3-4", or "3" for a single token
  static std::optional<Span> Parse(std::string_view text);
  auto operator<=>(const Span&) const = default;
};

// Throws NonTree unless the heads form a single-rooted tree.
void ValidateTree(const Sentence& sentence);

// Comments honored: sent_id, text, newdoc id, source_url, date. Multiword
// ranges ("1-2") and empty nodes ("1.1") are skipped. Throws ParseError or
// NonTree.
Document LoadConllu(std::string_view text, const std::string& default_id = "doc");

// Splits plain text into unparsed sentences on line breaks and final
// punctuation.
Document TokenizeRawText(std::string_view text, const std::string& id = "doc");

// Text content of an HTML page. script/style/comments are dropped and
// block elements end with a newline. "&lt;", "&gt;" and "&amp;" are kept
// as written so the output is a fixed point.
std::string StripMarkup(std::string_view html);

struct EntityAnnotation {
  std::string sentence_id;
  Span span;
  EntityType type;
  auto operator<=>(const EntityAnnotation&) const = default;
};

struct RelationAnnotation {
  TermId property;
  std::string sentence_id;
  Span subject;
  Span object;
  auto operator<=>(const RelationAnnotation&) const = default;
};

struct GoldAnnotation {
  std::vector<EntityAnnotation> entities;
  std::vector<RelationAnnotation> relations;

  std::map<TermId, int> CountsByProperty() const;
  bool operator==(const GoldAnnotation&) const = default;
};

// Line format (tab-separated, '#' comments):
//   ENT <sentence-id> <span> <type>
//   REL <sentence-id> <property-qname> <subject-span> <object-span>
// Properties are alias-normalized; unknown ones raise UnknownProperty.
// With a document, spans are checked (SpanOutOfBounds). Malformed lines
// raise ParseError.
GoldAnnotation LoadGold(std::string_view text, const vocab::VocabRegistry& registry,
                        const Document* doc = nullptr);
std::string SerializeGold(const GoldAnnotation& gold, const PrefixTable& prefixes);

}  // namespace provkb::corpus
