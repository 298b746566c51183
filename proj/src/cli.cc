#include "useg/cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "useg/arabic_text.h"
#include "useg/corpus.h"
#include "useg/data_paths.h"
#include "useg/error.h"
#include "useg/metrics.h"
#include "useg/segmenter.h"
#include "useg/sweep.h"
#include "useg/wawanizer.h"

namespace useg {
namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  bool quiet = false;
};

struct TemplateOptions {
  std::string window = "-2/+2";
  int prev_tags = 3;
  bool no_pos = false;
  bool bigrams = false;
  bool pos_center_only = false;

  FeatureTemplate Build() const {
    FeatureTemplate t;
    std::tie(t.window_before, t.window_after) = ParseWindow(window);
    t.n_prev_tags = prev_tags;
    t.use_pos = !no_pos;
    t.bigrams = bigrams;
    t.pos_all_offsets = !pos_center_only;
    t.Validate();
    return t;
  }
};

struct PosOptions {
  std::string source = "lexicon";
  std::string tagmap;
  std::string data_dir;

  TurnPosSource Build() const {
    if (source == "lexicon") {
      std::string dir = data_dir.empty() ? DataDir() : data_dir;
      return TurnPosSource::FromProvider(
          std::make_shared<LexiconPosProvider>(LexiconPosProvider::FromDirectory(dir)));
    }
    if (source == "gold") {
      return TurnPosSource::FromGoldTags(
          TagMapping::Load(tagmap.empty() ? DataFile("tagmap.conf") : tagmap));
    }
    if (source == "none") return TurnPosSource{};
    throw ValidationError("unknown POS source '" + source + "' (lexicon, gold or none)");
  }
};

struct SvmOptions {
  double c = 1.0;
  int max_iters = 1000;
  double tol = 1e-4;
  std::vector<std::string> class_weights;

  TrainConfig Build(std::uint64_t seed) const {
    TrainConfig config;
    config.c = c;
    config.max_iters = max_iters;
    config.tol = tol;
    config.shuffle_seed = seed;
    for (const auto& kv : class_weights) {
      auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ValidationError("class weight must look like CLASS=WEIGHT, got '" + kv + "'");
      }
      try {
        std::size_t used = 0;
        double w = std::stod(kv.substr(eq + 1), &used);
        if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
        config.class_weights[kv.substr(0, eq)] = w;
      } catch (const std::logic_error&) {
        throw ValidationError("bad class weight '" + kv + "'");
      }
    }
    config.Validate();
    return config;
  }
};

void AddTemplateOptions(CLI::App* cmd, TemplateOptions* t) {
  cmd->add_option("--window", t->window, "Context window as -B/+A (1..5 each side)")
      ->allow_extra_args(false);
  cmd->add_option("--prev-tags", t->prev_tags, "Number of previous predicted tags (0..5)");
  cmd->add_flag("--no-pos", t->no_pos, "Disable POS flag features");
  cmd->add_flag("--bigrams", t->bigrams, "Add adjacent word-pair features");
  cmd->add_flag("--pos-center-only", t->pos_center_only,
                "Emit POS flags for the current token only");
}

void AddPosOptions(CLI::App* cmd, PosOptions* p) {
  cmd->add_option("--pos", p->source, "POS source: lexicon, gold or none");
  cmd->add_option("--tagmap", p->tagmap, "Tag mapping config for --pos gold");
  cmd->add_option("--pos-data", p->data_dir, "Directory with POS word lists");
}

void AddSvmOptions(CLI::App* cmd, SvmOptions* s) {
  cmd->add_option("--c", s->c, "SVM regularization trade-off");
  cmd->add_option("--max-iters", s->max_iters, "Maximum coordinate-descent sweeps");
  cmd->add_option("--tol", s->tol, "Stopping tolerance on the projected gradient");
  cmd->add_option("--class-weight", s->class_weights, "CLASS=WEIGHT multiplier on C");
}

// Writes to --out when given, else to the command's output stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw IoError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }
  void Close(const std::string& path) {
    stream_->flush();
    if (!*stream_) throw IoError("error writing " + (path.empty() ? "output" : path));
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::vector<std::string> ReadLines(const std::string& path, std::istream& fallback) {
  std::ifstream file;
  std::istream* in = &fallback;
  if (!path.empty() && path != "-") {
    file.open(path);
    if (!file) throw IoError("cannot open " + path);
    in = &file;
  }
  std::vector<std::string> lines;
  for (std::string line; std::getline(*in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  if (in->bad()) throw IoError("error reading " + (path.empty() ? "input" : path));
  return lines;
}

WawLexicon LoadLexicon(const std::string& path, bool quiet, std::ostream& err) {
  std::vector<std::string> warnings;
  WawLexicon lexicon =
      WawLexicon::Load(path.empty() ? DataFile("waw_lexicon.txt") : path, &warnings);
  if (!quiet) {
    for (const auto& w : warnings) err << "warning: " << w << '\n';
  }
  return lexicon;
}

void PrintWarnings(const std::vector<std::string>& warnings, bool quiet, std::ostream& err) {
  if (quiet) return;
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Utterance segmentation for Arabic dialogue turns", "useg"};
  app.require_subcommand(1);
  GlobalOptions global;
  app.add_option("--seed", global.seed, "Seed for every source of randomness");
  app.add_flag("--quiet", global.quiet, "Suppress warnings and progress notes");

  std::string in_path, out_path;

  auto* normalize = app.add_subcommand("normalize", "Normalize Arabic text line by line");
  normalize->add_option("--in", in_path, "Input file (default: stdin)");
  normalize->add_option("--out", out_path, "Output file (default: stdout)");

  bool reverse = false;
  auto* translit = app.add_subcommand("translit", "Buckwalter transliteration, line by line");
  translit->add_option("--in", in_path, "Input file (default: stdin)");
  translit->add_option("--out", out_path, "Output file (default: stdout)");
  translit->add_flag("--reverse", reverse, "Buckwalter to Arabic");

  std::string lexicon_path;
  auto* wawanize = app.add_subcommand("wawanize", "Normalize and split the waw conjunction");
  wawanize->add_option("--in", in_path, "Input file (default: stdin)");
  wawanize->add_option("--out", out_path, "Output file (default: stdout)");
  wawanize->add_option("--lexicon", lexicon_path, "Waw lexicon (default: data dir)");

  std::string corpus_path;
  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  stats->add_option("--corpus", corpus_path, "Corpus file")->required();
  stats->add_option("--out", out_path, "Output file (default: stdout)");

  std::string out_prefix;
  std::vector<double> ratios = {0.70, 0.20, 0.10};
  bool seeded_shuffle = false;
  auto* split = app.add_subcommand("split", "Split each domain into train/dev/test");
  split->add_option("--corpus", corpus_path, "Corpus file")->required();
  split->add_option("--out-prefix", out_prefix,
                    "Writes PREFIX.train.useg, PREFIX.dev.useg, PREFIX.test.useg")
      ->required();
  split->add_option("--ratios", ratios, "Train, dev and test ratios")
      ->expected(3)
      ->delimiter(',');
  split->add_flag("--seeded-shuffle", seeded_shuffle,
                  "Shuffle turns within each domain using --seed before cutting");

  std::string model_path;
  TemplateOptions tmpl_opts;
  PosOptions pos_opts;
  SvmOptions svm_opts;
  auto* train = app.add_subcommand("train", "Train a segmentation model");
  train->add_option("--corpus", corpus_path, "Training corpus")->required();
  train->add_option("--model", model_path, "Model output path")->required();
  AddTemplateOptions(train, &tmpl_opts);
  AddPosOptions(train, &pos_opts);
  AddSvmOptions(train, &svm_opts);

  std::string raw_path, emit = "corpus";
  auto* tag = app.add_subcommand("tag", "Segment turns with a trained model");
  tag->add_option("--model", model_path, "Model file")->required();
  auto* tag_corpus = tag->add_option("--corpus", corpus_path, "Corpus file to re-tag");
  auto* tag_raw =
      tag->add_option("--raw", raw_path, "Raw text, one turn per line ('-' for stdin)");
  tag_corpus->excludes(tag_raw);
  tag->add_option("--out", out_path, "Output file (default: stdout)");
  tag->add_option("--emit", emit, "corpus or utterances");
  tag->add_option("--lexicon", lexicon_path, "Waw lexicon for --raw input");
  AddPosOptions(tag, &pos_opts);

  std::string gold_path, pred_path, format = "table";
  bool include_first = false;
  auto* eval = app.add_subcommand("eval", "Score predicted tags against gold");
  eval->add_option("--gold", gold_path, "Gold corpus")->required();
  eval->add_option("--pred", pred_path, "Predicted corpus")->required();
  eval->add_option("--format", format, "table, tsv or json");
  eval->add_flag("--include-first", include_first,
                 "Count each turn's first token in P/R/F1");
  eval->add_option("--out", out_path, "Output file (default: stdout)");

  std::string dev_path;
  std::vector<std::string> windows;
  auto* sweep = app.add_subcommand("sweep", "Train and score one model per window size");
  sweep->add_option("--corpus", corpus_path, "Training corpus")->required();
  sweep->add_option("--dev", dev_path, "Development corpus")->required();
  sweep->add_option("--windows", windows, "Windows to try (default -1/+1 .. -5/+5)")
      ->delimiter(',');
  sweep->add_option("--prev-tags", tmpl_opts.prev_tags, "Number of previous predicted tags");
  sweep->add_flag("--no-pos", tmpl_opts.no_pos, "Disable POS flag features");
  sweep->add_flag("--bigrams", tmpl_opts.bigrams, "Add adjacent word-pair features");
  sweep->add_flag("--pos-center-only", tmpl_opts.pos_center_only,
                  "Emit POS flags for the current token only");
  sweep->add_flag("--include-first", include_first,
                  "Count each turn's first token in P/R/F1");
  sweep->add_option("--out", out_path, "Output file (default: stdout)");
  AddPosOptions(sweep, &pos_opts);
  AddSvmOptions(sweep, &svm_opts);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (normalize->parsed()) {
      Output o(out_path, out);
      for (const auto& line : ReadLines(in_path, in)) {
        o.get() << Normalize(ArabicString(line)).str() << '\n';
      }
      o.Close(out_path);
    } else if (translit->parsed()) {
      Output o(out_path, out);
      std::size_t line_no = 0;
      for (const auto& line : ReadLines(in_path, in)) {
        ++line_no;
        if (!reverse) {
          o.get() << ToBuckwalter(ArabicString(line)) << '\n';
          continue;
        }
        try {
          o.get() << FromBuckwalter(line).str() << '\n';
        } catch (const TransliterationError& e) {
          throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
      }
      o.Close(out_path);
    } else if (wawanize->parsed()) {
      WawLexicon lexicon = LoadLexicon(lexicon_path, global.quiet, err);
      Output o(out_path, out);
      for (const auto& line : ReadLines(in_path, in)) {
        std::vector<ArabicString> words;
        for (const auto& w : SplitWhitespace(line)) {
          words.push_back(Normalize(ArabicString(w)));
        }
        std::string joined;
        for (const auto& w : WawanizeTurn(words, lexicon)) {
          if (!joined.empty()) joined.push_back(' ');
          joined += w.str();
        }
        o.get() << joined << '\n';
      }
      o.Close(out_path);
    } else if (stats->parsed()) {
      std::vector<Dialogue> corpus = LoadCorpus(corpus_path);
      Output o(out_path, out);
      o.get() << FormatStats(ComputeStats(corpus));
      o.Close(out_path);
      if (!global.quiet) {
        for (const auto& name : SpeakerRepeats(corpus)) {
          err << "note: turn " << name << " repeats the previous speaker\n";
        }
      }
    } else if (split->parsed()) {
      std::vector<Dialogue> corpus = LoadCorpus(corpus_path);
      SplitRatios r{ratios[0], ratios[1], ratios[2]};
      std::optional<std::uint64_t> seed;
      if (seeded_shuffle) seed = global.seed;
      CorpusSplit parts = SplitCorpus(corpus, r, seed);
      const std::pair<const char*, const std::vector<TurnRef>*> buckets[] = {
          {"train", &parts.train}, {"dev", &parts.dev}, {"test", &parts.test}};
      for (const auto& [name, refs] : buckets) {
        std::string path = out_prefix + "." + name + ".useg";
        std::vector<Dialogue> part = Materialize(corpus, *refs);
        SaveCorpus(part, path);
        CorpusStats s = ComputeStats(part);
        out << name << '\t' << path << '\t' << s.n_turns << " turns\t"
            << s.n_utterances << " utterances\n";
      }
    } else if (train->parsed()) {
      FeatureTemplate tmpl = tmpl_opts.Build();
      TrainConfig config = svm_opts.Build(global.seed);
      TurnPosSource pos = pos_opts.Build();
      std::vector<Turn> turns = FlattenTurns(LoadCorpus(corpus_path));
      std::vector<std::string> warnings;
      LinearModel model = TrainSegmenter(turns, tmpl, config, pos, &warnings);
      PrintWarnings(warnings, global.quiet, err);
      model.Save(model_path);
      if (!global.quiet) {
        err << "trained " << tmpl.Serialize() << " on " << turns.size() << " turns, "
            << model.alphabet().size() << " features -> " << model_path << '\n';
      }
    } else if (tag->parsed()) {
      if (emit != "corpus" && emit != "utterances") {
        throw ValidationError("--emit must be corpus or utterances");
      }
      if (corpus_path.empty() && raw_path.empty()) {
        throw ValidationError("tag needs --corpus or --raw");
      }
      LinearModel model = LinearModel::Load(model_path);
      std::vector<Dialogue> tagged;
      if (!corpus_path.empty()) {
        tagged = TagCorpus(LoadCorpus(corpus_path), model, pos_opts.Build());
      } else {
        if (pos_opts.source == "gold") {
          throw ValidationError("--pos gold needs a corpus with a POS column");
        }
        WawLexicon lexicon = LoadLexicon(lexicon_path, global.quiet, err);
        TurnPosSource pos = pos_opts.Build();
        Dialogue d{"raw", Genre::kBanks, Medium::kSpoken, {}};
        std::size_t line_no = 0;
        for (const auto& line : ReadLines(raw_path, in)) {
          ++line_no;
          if (SplitWhitespace(line).empty()) continue;
          Turn turn;
          turn.dialogue_id = d.id;
          turn.turn_id = "L" + std::to_string(line_no);
          turn.tokens = Preprocess(line, lexicon);
          turn.tags = GreedyDecode(model, MakeSequence(turn.tokens, pos.ForTurn(turn)));
          d.turns.push_back(std::move(turn));
        }
        tagged.push_back(std::move(d));
      }
      Output o(out_path, out);
      if (emit == "corpus") {
        WriteCorpus(tagged, o.get());
      } else {
        for (const auto& d : tagged) {
          for (const auto& turn : d.turns) {
            Segmentation s{turn.tokens, *turn.tags, TagsToSpans(*turn.tags)};
            for (const auto& text : UtteranceTexts(s)) {
              o.get() << turn.Name() << '\t' << text << '\n';
            }
          }
        }
      }
      o.Close(out_path);
    } else if (eval->parsed()) {
      ReportFormat report_format = ParseReportFormat(format);
      Metrics m = Evaluate(LoadCorpus(gold_path), LoadCorpus(pred_path), include_first);
      Output o(out_path, out);
      o.get() << Report(m, report_format);
      o.Close(out_path);
    } else if (sweep->parsed()) {
      std::vector<std::pair<int, int>> grid;
      for (const auto& w : windows) grid.push_back(ParseWindow(w));
      if (grid.empty()) grid = DefaultSweepWindows();
      FeatureTemplate base = tmpl_opts.Build();
      TrainConfig config = svm_opts.Build(global.seed);
      TurnPosSource pos = pos_opts.Build();
      std::vector<Turn> train_turns = FlattenTurns(LoadCorpus(corpus_path));
      std::vector<Turn> dev_turns = FlattenTurns(LoadCorpus(dev_path));
      std::vector<SweepRow> rows =
          RunSweep(train_turns, dev_turns, grid, base, config, pos, include_first);
      Output o(out_path, out);
      o.get() << FormatSweep(rows);
      o.Close(out_path);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace useg
