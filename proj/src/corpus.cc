#include "provkb/corpus.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "provkb/errors.h"
#include "provkb/text.h"

namespace provkb::corpus {

namespace {

bool ParseInt(std::string_view s, int* out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string LowerAscii(std::string_view s) {
  std::string out;
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

}  // namespace

std::vector<int> Sentence::Children(int index) const {
  std::vector<int> out;
  for (const Token& t : tokens) {
    if (t.head == index) out.push_back(t.index);
  }
  return out;
}

std::string Sentence::SpanText(int start, int end) const {
  std::vector<std::string> forms;
  for (int i = std::max(1, start); i <= std::min(end, size()); ++i) {
    forms.push_back(at(i).form);
  }
  return text::JoinForms(forms);
}

const Sentence* Document::Find(const std::string& sentence_id) const {
  for (const Sentence& s : sentences) {
    if (s.id == sentence_id) return &s;
  }
  return nullptr;
}

std::string Span::ToString() const {
  if (start == end) return std::to_string(start);
  return std::to_string(start) + "-" + std::to_string(end);
}

std::optional<Span> Span::Parse(std::string_view text) {
  Span s;
  size_t dash = text.find('-');
  if (dash == std::string_view::npos) {
    if (!ParseInt(text, &s.start)) return std::nullopt;
    s.end = s.start;
  } else if (!ParseInt(text.substr(0, dash), &s.start) ||
             !ParseInt(text.substr(dash + 1), &s.end)) {
    return std::nullopt;
  }
  if (s.start < 1 || s.end < s.start) return std::nullopt;
  return s;
}

void ValidateTree(const Sentence& sentence) {
  const int n = sentence.size();
  int roots = 0;
  for (const Token& t : sentence.tokens) {
    if (t.head < 0 || t.head > n) {
      throw NonTree(sentence.id, "token " + std::to_string(t.index) +
                                     " has head " + std::to_string(t.head) +
                                     " outside the sentence");
    }
    if (t.head == t.index) {
      throw NonTree(sentence.id, "token " + std::to_string(t.index) + " heads itself");
    }
    if (t.head == 0) ++roots;
  }
  if (n > 0 && roots != 1) {
    throw NonTree(sentence.id, std::to_string(roots) + " root tokens");
  }
  for (const Token& t : sentence.tokens) {
    int cur = t.index;
    for (int steps = 0; cur != 0; ++steps) {
      if (steps > n) {
        throw NonTree(sentence.id, "cycle through token " + std::to_string(t.index));
      }
      cur = sentence.at(cur).head;
    }
  }
}

Document LoadConllu(std::string_view input, const std::string& default_id) {
  Document doc;
  doc.id = default_id;
  Sentence cur;
  bool in_sentence = false;
  std::set<std::string> ids;
  int line_no = 0;

  auto finish = [&](int line) {
    if (!in_sentence) return;
    if (cur.tokens.empty()) throw ParseError("sentence without tokens", line);
    if (cur.id.empty()) cur.id = "s" + std::to_string(doc.sentences.size() + 1);
    if (!ids.insert(cur.id).second) {
      throw ParseError("duplicate sentence id '" + cur.id + "'", line);
    }
    if (cur.text.empty()) {
      std::vector<std::string> forms;
      for (const Token& t : cur.tokens) forms.push_back(t.form);
      cur.text = text::JoinForms(forms);
    }
    ValidateTree(cur);
    doc.sentences.push_back(std::move(cur));
    cur = Sentence();
    in_sentence = false;
  };

  size_t pos = 0;
  while (pos <= input.size()) {
    size_t nl = input.find('\n', pos);
    std::string_view line = input.substr(pos, nl == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : nl - pos);
    pos = nl == std::string_view::npos ? input.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (text::Trim(line).empty()) {
      finish(line_no);
      continue;
    }
    if (line[0] == '#') {
      std::string_view body = text::Trim(line.substr(1));
      size_t eq = body.find('=');
      std::string key = eq == std::string_view::npos
                            ? std::string(body)
                            : std::string(text::Trim(body.substr(0, eq)));
      std::string value =
          eq == std::string_view::npos ? "" : std::string(text::Trim(body.substr(eq + 1)));
      if (key == "sent_id") {
        cur.id = value;
        in_sentence = true;
      } else if (key == "text") {
        cur.text = value;
        in_sentence = true;
      } else if (key == "newdoc id" || key == "doc_id") {
        doc.id = value;
      } else if (key == "source_url") {
        doc.source_url = value;
      } else if (key == "date") {
        try {
          doc.date = store::CalendarDate::Parse(value);
        } catch (const Error& e) {
          throw ParseError(e.what(), line_no);
        }
      }
      continue;
    }
    std::vector<std::string> cols = text::Split(line, '\t');
    if (cols.size() != 10) {
      throw ParseError("expected 10 tab-separated columns, found " +
                           std::to_string(cols.size()),
                       line_no);
    }
    in_sentence = true;
    if (cols[0].find_first_of("-.") != std::string::npos) continue;
    Token t;
    if (!ParseInt(cols[0], &t.index)) throw ParseError("bad token id '" + cols[0] + "'", line_no);
    if (t.index != cur.size() + 1) {
      throw ParseError("token ids must run 1, 2, 3, ...", line_no);
    }
    if (!ParseInt(cols[6], &t.head)) throw ParseError("bad head '" + cols[6] + "'", line_no);
    t.form = cols[1];
    t.lemma = cols[2] == "_" && cols[1] != "_" ? text::Lower(cols[1]) : cols[2];
    t.upos = cols[3];
    t.xpos = cols[4];
    t.feats = cols[5];
    t.deprel = cols[7];
    t.deps = cols[8];
    t.misc = cols[9];
    if (t.form.empty() || t.deprel.empty()) {
      throw ParseError("empty form or dependency label", line_no);
    }
    cur.tokens.push_back(std::move(t));
  }
  finish(line_no);
  return doc;
}

Document TokenizeRawText(std::string_view input, const std::string& id) {
  Document doc;
  doc.id = id;
  std::vector<std::string> current;
  auto flush = [&]() {
    if (current.empty()) return;
    Sentence s;
    s.id = "s" + std::to_string(doc.sentences.size() + 1);
    s.parsed = false;
    for (size_t i = 0; i < current.size(); ++i) {
      Token t;
      t.index = static_cast<int>(i + 1);
      t.form = current[i];
      t.lemma = text::Lower(current[i]);
      t.upos = "_";
      t.xpos = "_";
      t.feats = "_";
      t.head = 0;
      t.deprel = "_";
      t.deps = "_";
      t.misc = "_";
      s.tokens.push_back(std::move(t));
    }
    s.text = text::JoinForms(current);
    doc.sentences.push_back(std::move(s));
    current.clear();
  };
  for (const std::string& line : text::Split(input, '\n')) {
    auto is_final = [](const std::string& tok) {
      return tok == "." || tok == "!" || tok == "?" || tok == "\xE2\x80\xA6";
    };
    std::vector<std::string> toks = text::Tokenize(line, /*split_punct=*/true);
    for (size_t i = 0; i < toks.size(); ++i) {
      bool final = is_final(toks[i]);
      current.push_back(std::move(toks[i]));
      // "..." and "?!" close a single sentence
      if (final && (i + 1 == toks.size() || !is_final(toks[i + 1]))) flush();
    }
    flush();
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Markup

namespace {

const std::set<std::string>& BlockElements() {
  static const std::set<std::string> names = {
      "address", "article", "aside", "blockquote", "br", "dd", "div", "dl",
      "dt", "fieldset", "figcaption", "figure", "footer", "form", "h1", "h2",
      "h3", "h4", "h5", "h6", "header", "hr", "li", "main", "nav", "ol", "p",
      "pre", "section", "table", "td", "th", "title", "tr", "ul"};
  return names;
}

void AppendDecodedEntity(std::string_view name, std::string* out) {
  static const std::pair<const char*, char32_t> kNamed[] = {
      {"nbsp", ' '},     {"quot", '"'},      {"apos", '\''},   {"eacute", 0xE9},
      {"egrave", 0xE8},  {"ecirc", 0xEA},    {"agrave", 0xE0}, {"acirc", 0xE2},
      {"ccedil", 0xE7},  {"ocirc", 0xF4},    {"ucirc", 0xFB},  {"icirc", 0xEE},
      {"euml", 0xEB},    {"iuml", 0xEF},     {"ugrave", 0xF9}, {"Eacute", 0xC9},
      {"laquo", 0xAB},   {"raquo", 0xBB},    {"rsquo", 0x2019}, {"lsquo", 0x2018},
      {"hellip", 0x2026}, {"euro", 0x20AC},  {"deg", 0xB0},    {"oelig", 0x153}};
  char32_t cp = 0;
  if (!name.empty() && name[0] == '#') {
    bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
    std::string_view digits = name.substr(hex ? 2 : 1);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(),
                                     value, hex ? 16 : 10);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && value > 0 &&
        value < 0x110000) {
      cp = value;
    }
  } else {
    for (const auto& [n, c] : kNamed) {
      if (name == n) cp = c;
    }
  }
  // Characters that would read back as markup are left encoded.
  if (cp == 0 || cp == '<' || cp == '>' || cp == '&' || cp < 0x20) {
    *out += "&";
    *out += name;
    *out += ";";
    return;
  }
  text::AppendUtf8(out, cp);
}

}  // namespace

std::string StripMarkup(std::string_view html) {
  std::string out;
  auto block_break = [&]() {
    if (!out.empty() && out.back() != '\n') out.push_back('\n');
  };
  size_t i = 0;
  while (i < html.size()) {
    char c = html[i];
    if (c == '&') {
      size_t semi = html.find(';', i + 1);
      if (semi != std::string_view::npos && semi - i <= 10 && semi > i + 1) {
        std::string_view name = html.substr(i + 1, semi - i - 1);
        bool word = std::all_of(name.begin(), name.end(), [](char ch) {
          return std::isalnum(static_cast<unsigned char>(ch)) || ch == '#';
        });
        if (word) {
          AppendDecodedEntity(name, &out);
          i = semi + 1;
          continue;
        }
      }
      out.push_back(c);
      ++i;
      continue;
    }
    if (c != '<') {
      out.push_back(c);
      ++i;
      continue;
    }
    if (html.substr(i, 4) == "<!--") {
      size_t end = html.find("-->", i + 4);
      i = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    char next = i + 1 < html.size() ? html[i + 1] : '\0';
    bool tagish = std::isalpha(static_cast<unsigned char>(next)) || next == '/' ||
                  next == '!' || next == '?';
    size_t close = html.find('>', i + 1);
    if (!tagish || close == std::string_view::npos) {
      out += "&lt;";
      ++i;
      continue;
    }
    std::string_view inner = html.substr(i + 1, close - i - 1);
    bool closing = !inner.empty() && inner[0] == '/';
    size_t name_start = closing ? 1 : 0;
    size_t name_end = name_start;
    while (name_end < inner.size() &&
           (std::isalnum(static_cast<unsigned char>(inner[name_end])) ||
            inner[name_end] == '-')) {
      ++name_end;
    }
    std::string name = LowerAscii(inner.substr(name_start, name_end - name_start));
    i = close + 1;
    if (!closing && (name == "script" || name == "style")) {
      std::string end_tag = "</" + name;
      std::string lowered_rest = LowerAscii(html.substr(i));
      size_t end = lowered_rest.find(end_tag);
      if (end == std::string::npos) {
        i = html.size();
      } else {
        size_t gt = html.find('>', i + end);
        i = gt == std::string_view::npos ? html.size() : gt + 1;
      }
      continue;
    }
    if (BlockElements().count(name)) block_break();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gold annotations

std::map<TermId, int> GoldAnnotation::CountsByProperty() const {
  std::map<TermId, int> counts;
  for (const RelationAnnotation& r : relations) ++counts[r.property];
  return counts;
}

GoldAnnotation LoadGold(std::string_view input, const vocab::VocabRegistry& registry,
                        const Document* doc) {
  GoldAnnotation gold;
  int line_no = 0;
  auto check_span = [&](const std::string& sid, const Span& span) {
    if (!doc) return;
    const Sentence* s = doc->Find(sid);
    if (!s) throw SpanOutOfBounds("unknown sentence '" + sid + "'");
    if (span.end > s->size()) {
      throw SpanOutOfBounds("span " + span.ToString() + " exceeds sentence '" + sid +
                            "' of " + std::to_string(s->size()) + " tokens");
    }
  };
  auto span_of = [&](const std::string& text) {
    auto span = Span::Parse(text);
    if (!span) throw ParseError("bad span '" + text + "'", line_no);
    return *span;
  };
  for (const std::string& raw : text::Split(input, '\n')) {
    ++line_no;
    std::string_view line = text::Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols = text::Split(line, '\t');
    for (std::string& c : cols) c = std::string(text::Trim(c));
    if (cols[0] == "ENT") {
      if (cols.size() != 4) throw ParseError("ENT needs 4 fields", line_no);
      auto type = ParseEntityType(cols[3]);
      if (!type) throw ParseError("unknown entity type '" + cols[3] + "'", line_no);
      Span span = span_of(cols[2]);
      check_span(cols[1], span);
      gold.entities.push_back({cols[1], span, *type});
    } else if (cols[0] == "REL") {
      if (cols.size() != 5) throw ParseError("REL needs 5 fields", line_no);
      TermId prop;
      try {
        prop = registry.Resolve(cols[2]);
      } catch (const Error&) {
        throw UnknownProperty("unknown property '" + cols[2] + "'");
      }
      vocab::NormalizedProperty np = registry.NormalizeProperty(prop);
      if (!np.known) throw UnknownProperty("unknown property '" + cols[2] + "'");
      Span subject = span_of(cols[3]);
      Span object = span_of(cols[4]);
      check_span(cols[1], subject);
      check_span(cols[1], object);
      gold.relations.push_back({np.id, cols[1], subject, object});
    } else {
      throw ParseError("record kind must be ENT or REL", line_no);
    }
  }
  return gold;
}

std::string SerializeGold(const GoldAnnotation& gold, const PrefixTable& prefixes) {
  std::string out;
  for (const EntityAnnotation& e : gold.entities) {
    out += "ENT\t" + e.sentence_id + "\t" + e.span.ToString() + "\t" +
           std::string(EntityTypeName(e.type)) + "\n";
  }
  for (const RelationAnnotation& r : gold.relations) {
    auto q = prefixes.Compact(r.property);
    if (!q) throw Error("no prefix for property " + r.property.str());
    out += "REL\t" + r.sentence_id + "\t" + *q + "\t" + r.subject.ToString() + "\t" +
           r.object.ToString() + "\n";
  }
  return out;
}

}  // namespace provkb::corpus
