// Python bindings: Turtle round-trips, queries, extraction, scoring and the
// validation service. Structured results cross the boundary as JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "provkb/corpus.h"
#include "provkb/errors.h"
#include "provkb/eval.h"
#include "provkb/http_api.h"
#include "provkb/linker.h"
#include "provkb/ner.h"
#include "provkb/paths.h"
#include "provkb/query.h"
#include "provkb/relex.h"
#include "provkb/service.h"
#include "provkb/turtle.h"

namespace py = pybind11;
using namespace provkb;
using nlohmann::json;

namespace {

const vocab::VocabRegistry& Reg() { return vocab::VocabRegistry::Default(); }

std::vector<std::tuple<std::string, std::string, std::string>> ParseTriples(const std::string& text) {
  std::vector<std::tuple<std::string, std::string, std::string>> out;
  const PrefixTable& p = Reg().prefixes();
  for (const Triple& t : store::ParseTurtle(text, p)) {
    out.emplace_back(store::RenderTerm(t.subject, p), store::RenderTerm(t.predicate, p),
                     store::RenderTerm(t.object, p));
  }
  return out;
}

std::string Canonical(const std::string& text) {
  return store::SerializeTurtle(store::ParseTurtle(text, Reg().prefixes()), Reg().prefixes());
}

std::string RunQuery(const std::string& sparql, const std::string& turtle, bool correlate) {
  query::ParseOptions opts;
  opts.correlate_not_exists = correlate;
  query::SelectQuery q = query::ParseQuery(sparql, opts);
  auto triples = store::ParseTurtle(turtle, Reg().prefixes());
  service::QueryResult r{query::Evaluate(q, triples, Reg()), q.rewrites};
  return service::ToJson(r, Reg().prefixes()).dump();
}

const service::Pipeline& DefaultPipeline() {
  static const service::Pipeline p = service::LoadPipeline(service::ServiceOptions::Defaults());
  return p;
}

std::vector<std::tuple<std::string, std::string, std::string, std::string, std::string>> Extract(
    const std::string& payload, const std::string& kind, const std::string& stage) {
  const service::Pipeline& p = DefaultPipeline();
  corpus::Document doc = service::LoadPayload(payload, service::ParsePayloadKind(kind), "doc");
  auto ms = ner::Recognize(doc, p.gazetteer, p.context_rules);
  std::vector<relex::CandidateTriple> cands;
  if (stage == "a") {
    cands = relex::ApplyRules(doc, ms, p.rules.rules, p.extract);
  } else if (stage == "b") {
    cands = relex::ApplyLexicon(doc, ms, p.lexicons, p.extract);
  } else if (stage == "ab") {
    cands = relex::ExtractPerSentence(doc, ms, p.rules.rules, p.lexicons, p.extract);
  } else {
    throw Error("stage must be a, b or ab");
  }
  const PrefixTable& pt = p.registry->prefixes();
  std::vector<std::tuple<std::string, std::string, std::string, std::string, std::string>> out;
  for (const auto& c : cands) {
    out.emplace_back(c.sentence_id, store::RenderTerm(c.triple.subject, pt),
                     store::RenderTerm(c.triple.predicate, pt), store::RenderTerm(c.triple.object, pt),
                     c.provenance.extractor.ToString());
  }
  return out;
}

std::string EvalReport(const std::string& conllu, const std::string& gold_text, bool tsv, bool counts) {
  const service::Pipeline& p = DefaultPipeline();
  corpus::Document doc = corpus::LoadConllu(conllu, "corpus");
  corpus::GoldAnnotation gold = corpus::LoadGold(gold_text, *p.registry, &doc);
  eval::MethodInputs inputs;
  inputs.syntactic =
      relex::LoadRulePack(ReadFile(DataPath("rules/syntactic.rules")), *p.registry).rules;
  inputs.lexico_syntactic = p.rules.rules;
  inputs.lexicons = p.lexicons;
  inputs.options = p.extract;
  auto ms = ner::Recognize(doc, p.gazetteer, p.context_rules);
  auto report = eval::EvalReport::FromRuns(eval::RunAllMethods(doc, ms, gold, inputs));
  const PrefixTable& pt = p.registry->prefixes();
  return tsv ? report.RenderTsv(pt, counts) : report.RenderTable(pt, counts);
}

class PyService {
 public:
  explicit PyService(std::optional<std::string> journal) {
    service::ServiceOptions o = service::ServiceOptions::Defaults();
    if (journal) o.journal = *journal;
    svc_ = std::make_unique<service::Service>(o);
  }

  std::string Ingest(const std::string& payload, const std::string& kind, const std::string& source_url,
                     const std::string& date) {
    std::optional<store::CalendarDate> d;
    if (!date.empty()) d = store::CalendarDate::Parse(date);
    return service::ToJson(svc_->Ingest(payload, service::ParsePayloadKind(kind), source_url, d)).dump();
  }
  std::string Queue() const {
    json arr = json::array();
    for (const auto& e : svc_->PendingByArticle()) arr.push_back(service::ToJson(e));
    return arr.dump();
  }
  std::string Items(const std::string& doc, bool processed) const {
    json arr = json::array();
    auto items = processed ? svc_->ProcessedTriples(doc) : svc_->PendingTriples(doc);
    for (const auto& i : items) arr.push_back(service::ToJson(i, svc_->registry().prefixes()));
    return arr.dump();
  }
  std::string Decide(const std::string& key, const std::string& body) {
    return service::ToJson(svc_->Decide(key, service::DecisionFromJson(json::parse(body), *svc_))).dump();
  }
  std::string Entities(const std::string& type, const std::string& initial) const {
    std::optional<std::string> init;
    if (!initial.empty()) init = initial;
    return service::ToJson(svc_->Entities(type, init)).dump();
  }
  std::string Graph(const std::string& iri, int depth) const {
    return service::ToJson(svc_->Neighborhood(svc_->ResolveIri(iri), depth), svc_->registry().prefixes())
        .dump();
  }
  std::string Query(const std::string& sparql) const {
    return service::ToJson(svc_->Query(sparql), svc_->registry().prefixes()).dump();
  }
  std::string Mentions(const std::string& doc) const { return service::ToJson(svc_->Mentions(doc)).dump(); }
  size_t Import(const std::string& turtle) { return svc_->ImportTurtle(turtle); }
  std::string Export(const std::string& graph) const {
    return svc_->ExportTurtle(store::GraphSelector::Parse(graph));
  }

 private:
  std::unique_ptr<service::Service> svc_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Product knowledge-base toolkit";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<SyntaxError>(m, "SyntaxError", base);
  py::register_exception<UnknownPrefix>(m, "UnknownPrefix", base);
  py::register_exception<UnsupportedFeature>(m, "UnsupportedFeature", base);
  py::register_exception<NotFound>(m, "NotFound", base);
  py::register_exception<AlreadyDecided>(m, "AlreadyDecided", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<UnparseablePayload>(m, "UnparseablePayload", base);
  py::register_exception<UnknownType>(m, "UnknownType", base);
  py::register_exception<WeightsInvalid>(m, "WeightsInvalid", base);

  m.def("data_dir", [] { return DataDir().string(); });
  m.def("parse_turtle", &ParseTriples, py::arg("text"));
  m.def("canonical_turtle", &Canonical, py::arg("text"));
  m.def("_query", &RunQuery, py::arg("sparql"), py::arg("turtle"), py::arg("correlate_not_exists") = true);
  m.def("extract", &Extract, py::arg("payload"), py::arg("kind") = "raw", py::arg("stage") = "ab");
  m.def("eval_report", &EvalReport, py::arg("conllu"), py::arg("gold"), py::arg("tsv") = false,
        py::arg("counts") = false);
  m.def("edit_ratio", &linker::EditRatio, py::arg("a"), py::arg("b"));

  py::class_<PyService>(m, "_Service")
      .def(py::init<std::optional<std::string>>(), py::arg("journal") = py::none())
      .def("ingest", &PyService::Ingest)
      .def("queue", &PyService::Queue)
      .def("items", &PyService::Items)
      .def("decide", &PyService::Decide)
      .def("entities", &PyService::Entities)
      .def("graph", &PyService::Graph)
      .def("query", &PyService::Query)
      .def("mentions", &PyService::Mentions)
      .def("import_turtle", &PyService::Import)
      .def("export_turtle", &PyService::Export);
}
