#pragma once

// Random graphs inside the Turtle subset: prefixed and unsafe local names,
// escaped strings, language tags, typed literals and booleans.

#include <random>
#include <string>
#include <vector>

#include "provkb/rdf.h"

namespace oracle {

class TurtleGen {
 public:
  explicit TurtleGen(unsigned seed) : rng_(seed) {}

  std::vector<provkb::Triple> Graph() {
    std::vector<provkb::Triple> out;
    int n = Uniform(1, 40);
    for (int i = 0; i < n; ++i) {
      out.push_back(provkb::Triple::Make(provkb::Term::Iri(Iri()), provkb::Term::Iri(Predicate()),
                                         Object()));
    }
    return out;
  }

 private:
  int Uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  provkb::TermId Iri() {
    static const char* kLocals[] = {"Eau_Mega", "La_Vie_est_Belle", "Olivier_Polge", "x1",
                                    "Elsève",   "a.b",              "with space", "p%20q",
                                    "L'Oréal",  "Y.M.C.A._(song)",  "trail.",     "dash-ed"};
    static const char* kNs[] = {"http://example.org#", "http://dbpedia.org/resource/",
                                "http://ns.inria.fr/provoc#", "http://other.test/path/"};
    std::string local = kLocals[Uniform(0, 11)];
    std::string ns = kNs[Uniform(0, 3)];
    if (local.find(' ') != std::string::npos) local.replace(local.find(' '), 1, "_");
    return provkb::TermId(ns + local);
  }

  provkb::TermId Predicate() {
    static const char* kP[] = {"hasComponent", "hasRepresentative", "belongsToBrand", "note"};
    if (Uniform(0, 5) == 0) return provkb::TermId("http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
    return provkb::TermId(std::string("http://ns.inria.fr/provoc#") + kP[Uniform(0, 3)]);
  }

  std::string Text() {
    static const char* kPieces[] = {"parfum", " ", "\"", "\\", "\n", "\t", "é", "ü",
                                    "'",      "#", "@",  ".",  ";",  "€", "\r", "fleur"};
    std::string s;
    int n = Uniform(0, 6);
    for (int i = 0; i < n; ++i) s += kPieces[Uniform(0, 15)];
    return s;
  }

  provkb::Term Object() {
    switch (Uniform(0, 6)) {
      case 0:
      case 1:
        return provkb::Term::Iri(Iri());
      case 2:
        return provkb::Term::Literal(Text());
      case 3: {
        static const char* kLangs[] = {"fr", "en", "en-GB"};
        return provkb::Term::LangLiteral(Text(), kLangs[Uniform(0, 2)]);
      }
      case 4:
        return provkb::Term::Literal(std::to_string(Uniform(-50, 5000)),
                                     provkb::TermId("http://www.w3.org/2001/XMLSchema#integer"));
      case 5:
        return provkb::Term::Literal(Uniform(0, 1) ? "true" : "false",
                                     provkb::TermId("http://www.w3.org/2001/XMLSchema#boolean"));
      default:
        return provkb::Term::Literal("2015-0" + std::to_string(Uniform(1, 9)) + "-12",
                                     provkb::TermId("http://www.w3.org/2001/XMLSchema#date"));
    }
  }

  std::mt19937 rng_;
};

}  // namespace oracle
