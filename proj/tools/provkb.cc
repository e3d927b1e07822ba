// provkb: command-line front end for the knowledge-base toolkit.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "provkb/corpus.h"
#include "provkb/errors.h"
#include "provkb/eval.h"
#include "provkb/http_api.h"
#include "provkb/ner.h"
#include "provkb/paths.h"
#include "provkb/relex.h"
#include "provkb/service.h"
#include "provkb/text.h"
#include "provkb/turtle.h"

namespace {

using namespace provkb;
using nlohmann::json;

struct Common {
  std::string vocab;
  std::string kb;
  std::vector<std::string> snapshots;  // name=path
  std::string rules;
  std::string lexicons;
  std::string gazetteer;
  std::string context;
  std::string journal;
  std::string weights;
  double tau = linker::kDefaultTau;
  int window = 3;
};

std::string ReadInput(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  return ReadFile(path);
}

service::ServiceOptions OptionsFrom(const Common& c) {
  service::ServiceOptions o = service::ServiceOptions::Defaults();
  if (!c.vocab.empty()) o.vocab = c.vocab;
  if (!c.kb.empty()) o.kb = c.kb == "none" ? "" : c.kb;
  if (!c.snapshots.empty()) {
    o.snapshots.clear();
    for (const std::string& s : c.snapshots) {
      size_t eq = s.find('=');
      if (eq == std::string::npos) throw Error("--snapshot expects name=path, got " + s);
      o.snapshots.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
  }
  if (!c.rules.empty()) o.rules = c.rules;
  if (!c.lexicons.empty()) o.lexicons = c.lexicons;
  if (!c.gazetteer.empty()) o.gazetteer = c.gazetteer;
  if (!c.context.empty()) o.context_rules = c.context;
  if (!c.journal.empty()) o.journal = c.journal;
  if (!c.weights.empty()) o.weights = linker::Weights::Parse(c.weights);
  o.tau = c.tau;
  o.extract.window = c.window;
  return o;
}

void PrintJson(const json& j) { std::cout << j.dump(2) << "\n"; }

corpus::Document LoadDocumentFile(const std::string& path, const std::string& kind) {
  std::string data = ReadInput(path);
  return service::LoadPayload(data, service::ParsePayloadKind(kind), "doc");
}

std::string CandidateLine(const relex::CandidateTriple& c, const PrefixTable& prefixes) {
  return text::Join({c.sentence_id, store::RenderTerm(c.triple.subject, prefixes),
                     store::RenderTerm(c.triple.predicate, prefixes),
                     store::RenderTerm(c.triple.object, prefixes), c.provenance.extractor.ToString()},
                    "\t");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Product knowledge-base toolkit"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--vocab", c.vocab, "Vocabulary Turtle file");
  app.add_option("--kb", c.kb, "Seed Turtle for the validated graph ('none' for empty)");
  app.add_option("--snapshot", c.snapshots, "Read-only snapshot as name=path (repeatable)");
  app.add_option("--rules", c.rules, "Lexico-syntactic rule pack");
  app.add_option("--lexicons", c.lexicons, "Relation lexicons");
  app.add_option("--gazetteer", c.gazetteer, "NER gazetteer");
  app.add_option("--context", c.context, "NER context cue rules");
  app.add_option("--journal", c.journal, "Decision journal (JSON lines) to replay and append");
  app.add_option("--weights", c.weights, "Linker weights string,context,connectivity");
  app.add_option("--tau", c.tau, "Linker NIL threshold");
  app.add_option("--window", c.window, "Lexicon flank window in tokens");

  // service-backed commands
  std::string in_path, kind = "raw", source_url, date;
  auto* ingest = app.add_subcommand("ingest", "Run the pipeline on a document and queue its triples");
  ingest->add_option("file", in_path, "Input file ('-' for stdin)")->required();
  ingest->add_option("--kind", kind, "raw | html | conllu");
  ingest->add_option("--source-url", source_url);
  ingest->add_option("--date", date, "YYYY-MM-DD");

  auto* queue = app.add_subcommand("queue", "List articles with queued triples");

  std::string doc_id;
  auto* pending = app.add_subcommand("pending", "Pending triples of a document");
  pending->add_option("document", doc_id)->required();
  auto* processed = app.add_subcommand("processed", "Decided triples of a document");
  processed->add_option("document", doc_id)->required();
  auto* mentions = app.add_subcommand("mentions", "Entity mentions and summary of a document");
  mentions->add_option("document", doc_id)->required();

  std::string key, decision = "accept", subject, object, type, label, role = "subject";
  auto* decide = app.add_subcommand("decide", "Record an expert decision on a queued triple");
  decide->add_option("key", key, "Triple key")->required();
  decide->add_option("--decision", decision,
                     "accept | reject | create-new-entity | propose-other-IRI");
  decide->add_option("--subject", subject);
  decide->add_option("--object", object);
  decide->add_option("--type", type);
  decide->add_option("--label", label);
  decide->add_option("--role", role);
  decide->add_option("--document", doc_id);

  std::string initial;
  auto* entities = app.add_subcommand("entities", "Alphabetical index of validated entities");
  entities->add_option("--type", type, "Marque, Produit, Gamme, Division or Groupe")->required();
  entities->add_option("--initial", initial);

  std::string iri;
  int depth = 1;
  auto* graph = app.add_subcommand("graph", "Neighborhood of an entity");
  graph->add_option("iri", iri)->required();
  graph->add_option("--depth", depth);

  auto* query = app.add_subcommand("query", "Run a SELECT query over validated and snapshots");
  query->add_option("file", in_path, "Query file ('-' for stdin)")->required();

  auto* import = app.add_subcommand("import", "Load Turtle into the validated graph");
  import->add_option("file", in_path)->required();

  std::string graph_name = "validated";
  auto* exporter = app.add_subcommand("export", "Serialize a graph as Turtle");
  exporter->add_option("--graph", graph_name, "temporary | validated | snapshot:<name>");

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Start the HTTP API");
  serve->add_option("--host", host);
  serve->add_option("--port", port);

  // offline commands
  std::string stage = "ab";
  auto* extract = app.add_subcommand("extract", "Extract candidate triples from a document");
  extract->add_option("file", in_path)->required();
  extract->add_option("--kind", kind, "raw | html | conllu");
  extract->add_option("--stage", stage, "a (rules) | b (lexicon) | ab (both, gated)");

  std::string corpus_path, gold_path, syntactic_rules;
  bool tsv = false, counts = false;
  auto* evaluate = app.add_subcommand("eval", "Score the extraction methods on an annotated corpus");
  evaluate->add_option("--corpus", corpus_path, "CoNLL-U corpus")->required();
  evaluate->add_option("--gold", gold_path, "Gold annotation file")->required();
  evaluate->add_option("--syntactic-rules", syntactic_rules, "Trigger-free rule pack");
  evaluate->add_flag("--tsv", tsv, "Tab-separated output");
  evaluate->add_flag("--counts", counts, "Add F1 and tp/fp/fn columns");

  CLI11_PARSE(app, argc, argv);

  try {
    service::ServiceOptions options = OptionsFrom(c);

    if (extract->parsed() || evaluate->parsed()) {
      service::Pipeline p = service::LoadPipeline(options);
      const PrefixTable& prefixes = p.registry->prefixes();
      if (extract->parsed()) {
        corpus::Document doc = LoadDocumentFile(in_path, kind);
        auto ms = ner::Recognize(doc, p.gazetteer, p.context_rules);
        std::vector<relex::CandidateTriple> out;
        if (stage == "a") {
          out = relex::ApplyRules(doc, ms, p.rules.rules, p.extract);
        } else if (stage == "b") {
          out = relex::ApplyLexicon(doc, ms, p.lexicons, p.extract);
        } else if (stage == "ab") {
          out = relex::ExtractPerSentence(doc, ms, p.rules.rules, p.lexicons, p.extract);
        } else {
          throw Error("--stage must be a, b or ab");
        }
        for (const auto& cand : out) std::cout << CandidateLine(cand, prefixes) << "\n";
        return 0;
      }
      corpus::Document doc = corpus::LoadConllu(ReadFile(corpus_path), "corpus");
      corpus::GoldAnnotation gold = corpus::LoadGold(ReadFile(gold_path), *p.registry, &doc);
      eval::MethodInputs inputs;
      std::string syn = syntactic_rules.empty() ? DataPath("rules/syntactic.rules").string()
                                                : syntactic_rules;
      inputs.syntactic = relex::LoadRulePack(ReadFile(syn), *p.registry).rules;
      inputs.lexico_syntactic = p.rules.rules;
      inputs.lexicons = p.lexicons;
      inputs.options = p.extract;
      auto ms = ner::Recognize(doc, p.gazetteer, p.context_rules);
      eval::EvalReport report =
          eval::EvalReport::FromRuns(eval::RunAllMethods(doc, ms, gold, inputs));
      std::cout << (tsv ? report.RenderTsv(prefixes, counts)
                        : report.RenderTable(prefixes, counts));
      return 0;
    }

    service::Service svc(options);
    const PrefixTable& prefixes = svc.registry().prefixes();
    if (ingest->parsed()) {
      std::optional<store::CalendarDate> d;
      if (!date.empty()) d = store::CalendarDate::Parse(date);
      PrintJson(service::ToJson(
          svc.Ingest(ReadInput(in_path), service::ParsePayloadKind(kind), source_url, d)));
    } else if (queue->parsed()) {
      for (const service::QueueEntry& e : svc.PendingByArticle()) {
        std::cout << e.document_id << "\t" << e.decided << " / " << e.total << "\t"
                  << e.excerpt << "\n";
      }
    } else if (pending->parsed() || processed->parsed()) {
      json arr = json::array();
      auto items = pending->parsed() ? svc.PendingTriples(doc_id) : svc.ProcessedTriples(doc_id);
      for (const auto& item : items) arr.push_back(service::ToJson(item, prefixes));
      PrintJson(arr);
    } else if (mentions->parsed()) {
      PrintJson(service::ToJson(svc.Mentions(doc_id)));
    } else if (decide->parsed()) {
      service::DecisionRequest r;
      r.kind = service::DecisionRequest::ParseKind(decision);
      if (!subject.empty()) r.subject = svc.ResolveIri(subject);
      if (!object.empty()) r.object = svc.ResolveIri(object);
      if (!type.empty()) r.type = EntityTypeOrThrow(type);
      if (!label.empty()) r.label = label;
      r.role = role;
      if (!doc_id.empty()) r.document_id = doc_id;
      PrintJson(service::ToJson(svc.Decide(key, r)));
    } else if (entities->parsed()) {
      std::optional<std::string> init;
      if (!initial.empty()) init = initial;
      PrintJson(service::ToJson(svc.Entities(type, init)));
    } else if (graph->parsed()) {
      PrintJson(service::ToJson(svc.Neighborhood(svc.ResolveIri(iri), depth), prefixes));
    } else if (query->parsed()) {
      service::QueryResult r = svc.Query(ReadInput(in_path));
      for (const std::string& w : r.rewrites) std::cerr << "rewrite: " << w << "\n";
      std::cout << r.table.ToTsv(prefixes);
    } else if (import->parsed()) {
      std::cout << svc.ImportTurtle(ReadInput(in_path)) << " triples imported\n";
    } else if (exporter->parsed()) {
      std::cout << svc.ExportTurtle(store::GraphSelector::Parse(graph_name));
    } else if (serve->parsed()) {
      std::cerr << "listening on " << host << ":" << port << "\n";
      return service::Serve(svc, host, port) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
