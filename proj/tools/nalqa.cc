// Copyright 2026 The NaLQA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end: knowledge directory setup, news ingestion,
// question answering and evaluation.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nalqa/dep_input.h"
#include "nalqa/discourse.h"
#include "nalqa/error.h"
#include "nalqa/eval.h"
#include "nalqa/gazetteer.h"
#include "nalqa/ontology.h"
#include "nalqa/reasoner.h"
#include "nalqa/semnet.h"
#include "shipped_data.h"

namespace fs = std::filesystem;

namespace nalqa {
namespace {

constexpr int kExitAnswer = 0;
constexpr int kExitExplanation = 1;
constexpr int kExitError = 2;

constexpr char kOntologyFile[] = "ontology.xi";
constexpr char kGazetteerFile[] = "gazetteer.tsv";
constexpr char kNetworkFile[] = "network.tsv";
constexpr char kNetworkHeader[] = "sn_node1\tsn_edge\tsn_node2\n";

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Writes through a temporary file so readers never see a partial file.
void WriteFile(const fs::path &path, const std::string &content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorKind::kIo, "write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot replace " + path.string());
}

struct Kb {
  Ontology onto;
  Gazetteer gaz;
  SemanticNetwork net;
};

Kb LoadKb(const fs::path &dir) {
  Kb kb;
  kb.onto = Ontology::Load(ReadFile(dir / kOntologyFile));
  kb.gaz = Gazetteer::Load(ReadFile(dir / kGazetteerFile));
  kb.gaz.Validate(kb.onto);
  kb.net = SemanticNetwork::Parse(ReadFile(dir / kNetworkFile));
  return kb;
}

int Init(const fs::path &dir, bool force) {
  std::error_code ec;
  if (fs::exists(dir) && !fs::is_empty(dir) && !force) {
    std::cerr << "nalqa: " << dir.string()
              << " is not empty; use --force to reset it\n";
    return kExitError;
  }
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + dir.string());
  WriteFile(dir / kOntologyFile, kShippedOntology);
  WriteFile(dir / kGazetteerFile, kShippedGazetteer);
  WriteFile(dir / kNetworkFile, kNetworkHeader);
  std::cout << "initialized " << dir.string() << "\n";
  return kExitAnswer;
}

int Ingest(const fs::path &dir, const fs::path &parses) {
  Kb kb = LoadKb(dir);
  auto docs = ParseDocuments(ReadFile(parses));
  DiscourseIntegrator di(kb.onto, kb.gaz);
  size_t before = kb.net.size();
  int failed = 0;
  for (size_t i = 0; i < docs.size(); ++i) {
    std::string key = parses.filename().string() + "#" + std::to_string(i + 1);
    SemanticNetwork next = kb.net;
    try {
      Integration in = di.Ingest(docs[i], key, &next);
      std::cout << "document " << i + 1 << ": +"
                << next.size() - kb.net.size() << " triples, "
                << in.entities.size() << " entities, " << in.events.size()
                << " events\n";
      for (const auto &w : in.warnings) {
        std::cout << "  warning: " << w << "\n";
      }
      kb.net = std::move(next);
    } catch (const Error &e) {
      ++failed;
      std::cout << "document " << i + 1 << ": skipped: "
                << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    }
  }
  WriteFile(dir / kNetworkFile, kNetworkHeader + kb.net.Serialize());
  std::cout << "network: " << kb.net.size() << " triples (+"
            << kb.net.size() - before << ")\n";
  return failed ? kExitExplanation : kExitAnswer;
}

void Explain(const Reply &r) {
  std::cerr << "outcome: " << OutcomeKindName(r.outcome.kind) << "\n";
  if (!r.unknown_words.empty()) {
    for (const auto &w : r.unknown_words) std::cerr << "unknown: " << w << "\n";
    return;
  }
  if (r.query) {
    std::cerr << "form: " << QuestionFormName(r.query->form) << "\n";
    if (r.query->marker) {
      std::cerr << "marker: " << r.query->marker->role << " ("
                << r.query->marker->wh_class
                << (r.query->marker->contingency ? ", contingency" : "")
                << ")\n";
    }
  }
  for (const auto &q : r.reduction.q) std::cerr << "Q: " << q.ToString() << "\n";
  if (r.reduction.a) std::cerr << "A: " << r.reduction.a->ToString() << "\n";
  if (r.reduction.under_constrained) std::cerr << "under-constrained\n";
  for (const auto &e : r.outcome.events) std::cerr << "event: " << e << "\n";
  for (const auto &a : r.outcome.answers) {
    std::cerr << "answer: " << a.value << " (" << a.entity << " in "
              << a.event << ")\n";
  }
  for (const auto &f : r.outcome.failed) {
    std::cerr << "failed: " << f.ToString() << "\n";
  }
}

int Ask(const fs::path &dir, const std::string &question,
        const std::string &parse_file, bool relax, bool explain) {
  Kb kb = LoadKb(dir);
  QueryEngine engine(kb.onto, kb.gaz, kb.net);
  std::vector<Reply> replies;
  if (!parse_file.empty()) {
    for (const auto &g : ParseDepFile(ReadFile(parse_file))) {
      replies.push_back(engine.AskParsed(g, relax));
    }
  } else {
    replies.push_back(engine.Ask(question, relax));
  }
  int code = kExitAnswer;
  for (const auto &r : replies) {
    std::cout << r.text << "\n";
    if (explain) Explain(r);
    if (!r.answered) code = kExitExplanation;
  }
  return code;
}

int Score(const std::string &file) {
  auto judgments = ParseJudgments(ReadFile(file));
  for (const auto &s : ScoreSystems(SystemsOf(judgments), judgments)) {
    std::cout << s.system << "\t" << s.total << "\n";
  }
  return kExitAnswer;
}

int Stats(const std::string &file) {
  TimeStats st = ComputeTimeStats(ParseSeries(ReadFile(file)));
  std::cout << std::fixed << std::setprecision(4);
  std::cout << "n\t" << st.n << "\n"
            << "max\t" << st.max << "\n"
            << "min\t" << st.min << "\n"
            << "mean\t" << st.mean << "\n"
            << "stddev\t" << st.stddev << "\n"
            << "population_stddev\t" << st.population_stddev << "\n"
            << "population_variance\t" << st.population_variance << "\n";
  return kExitAnswer;
}

int Main(int argc, char **argv) {
  CLI::App app{"Knowledge-based question answering over news"};
  app.require_subcommand(1);
  std::string kb_dir = ".";
  app.add_option("--kb", kb_dir, "Knowledge directory (NALQA_KB overrides)");

  auto *init = app.add_subcommand("init", "Write the shipped knowledge base");
  bool force = false;
  init->add_flag("--force", force, "Reset a non-empty directory");

  auto *ingest = app.add_subcommand("ingest", "Add parsed news documents");
  std::string parses;
  ingest->add_option("--parses", parses, "Dependency parse file")
      ->required()
      ->check(CLI::ExistingFile);

  auto *ask = app.add_subcommand("ask", "Answer a question");
  std::string question, parse_file;
  bool no_relax = false, explain = false;
  auto *q_opt = ask->add_option("question", question, "Question text");
  auto *p_opt = ask->add_option("--parse", parse_file,
                                "Dependency parse of the question(s)")
                    ->check(CLI::ExistingFile);
  q_opt->excludes(p_opt);
  ask->add_flag("--no-relax", no_relax, "Match event classes exactly");
  ask->add_flag("--explain", explain, "Print the matching trace to stderr");

  auto *eval = app.add_subcommand("eval", "Evaluation helpers");
  eval->require_subcommand(1);
  std::string eval_file;
  auto *score = eval->add_subcommand("score", "Pair-wise scoring totals");
  score->add_option("file", eval_file, "Judgments TSV")
      ->required()
      ->check(CLI::ExistingFile);
  auto *stats = eval->add_subcommand("stats", "Response time statistics");
  stats->add_option("file", eval_file, "One time per line")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }
  if (const char *env = std::getenv("NALQA_KB"); env && *env) kb_dir = env;

  try {
    if (*init) return Init(kb_dir, force);
    if (*ingest) return Ingest(kb_dir, parses);
    if (*ask) {
      if (question.empty() && parse_file.empty()) {
        std::cerr << "nalqa: ask needs a question or --parse\n";
        return kExitError;
      }
      return Ask(kb_dir, question, parse_file, !no_relax, explain);
    }
    if (*score) return Score(eval_file);
    if (*stats) return Stats(eval_file);
  } catch (const Error &e) {
    std::cerr << "nalqa: " << ErrorKindName(e.kind()) << ": " << e.what()
              << "\n";
    return kExitError;
  } catch (const std::exception &e) {
    std::cerr << "nalqa: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace
}  // namespace nalqa

int main(int argc, char **argv) { return nalqa::Main(argc, argv); }
