#include "useg/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include "useg/error.h"

namespace useg {
namespace {

constexpr std::size_t kMinTurnsPerDomain = 10;
constexpr std::string_view kDialoguePrefix = "# dialogue:";
constexpr std::string_view kTurnPrefix = "# turn:";
constexpr std::string_view kEmpty = "_";

std::vector<std::string> SplitOn(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

// Parses "<id> key=value key=value" after a metadata prefix.
struct Header {
  std::string id;
  std::map<std::string, std::string> attrs;
};

std::optional<Header> ParseHeader(std::string_view rest) {
  std::istringstream in{std::string(rest)};
  Header h;
  if (!(in >> h.id)) return std::nullopt;
  for (std::string kv; in >> kv;) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) return std::nullopt;
    h.attrs[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return h;
}

class CorpusReader {
 public:
  explicit CorpusReader(std::string source) : source_(std::move(source)) {}

  std::vector<Dialogue> Read(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) {
        FinishTurn();
      } else if (line.starts_with(kDialoguePrefix)) {
        StartDialogue(line.substr(kDialoguePrefix.size()));
      } else if (line.starts_with(kTurnPrefix)) {
        StartTurn(line.substr(kTurnPrefix.size()));
      } else if (line[0] == '#') {
        continue;
      } else {
        AddToken(line);
      }
    }
    if (in.bad()) throw IoError("error reading " + source_);
    FinishTurn();
    return std::move(dialogues_);
  }

 private:
  [[noreturn]] void Fail(const std::string& why) const {
    throw ValidationError(source_ + ":" + std::to_string(line_no_) + ": " +
                          why);
  }

  void StartDialogue(const std::string& rest) {
    FinishTurn();
    auto h = ParseHeader(rest);
    if (!h) Fail("malformed dialogue header");
    Dialogue d;
    d.id = h->id;
    auto genre = ParseGenre(h->attrs["genre"]);
    if (!genre) Fail("dialogue " + d.id + ": unknown genre '" + h->attrs["genre"] + "'");
    auto medium = ParseMedium(h->attrs["medium"]);
    if (!medium) Fail("dialogue " + d.id + ": unknown medium '" + h->attrs["medium"] + "'");
    d.genre = *genre;
    d.medium = *medium;
    dialogues_.push_back(std::move(d));
  }

  void StartTurn(const std::string& rest) {
    FinishTurn();
    if (dialogues_.empty()) Fail("turn header before any dialogue header");
    auto h = ParseHeader(rest);
    if (!h) Fail("malformed turn header");
    auto speaker = ParseSpeaker(h->attrs["speaker"]);
    if (!speaker) Fail("turn " + h->id + ": unknown speaker '" + h->attrs["speaker"] + "'");
    turn_.emplace();
    turn_->dialogue_id = dialogues_.back().id;
    turn_->turn_id = h->id;
    turn_->speaker = *speaker;
    tag_cells_.clear();
    da_cells_.clear();
    turn_start_line_ = line_no_;
  }

  void AddToken(const std::string& line) {
    if (!turn_) Fail("token line outside a turn");
    std::vector<std::string> cols = SplitOn(line, '\t');
    if (cols.size() != 6) {
      Fail("expected 6 tab-separated columns, got " + std::to_string(cols.size()));
    }
    std::size_t expected = turn_->tokens.size();
    if (cols[0] != std::to_string(expected)) {
      Fail("token index '" + cols[0] + "', expected " + std::to_string(expected));
    }
    ArabicString surface(cols[1]);
    if (surface.empty() || SplitWhitespace(surface.str()).size() != 1) {
      Fail("surface must be a single non-empty word");
    }
    Token token = MakeToken(surface, expected, cols[3] == kEmpty ? "" : cols[3]);
    if (token.buckwalter != cols[2]) {
      Fail("Buckwalter column '" + cols[2] + "' does not match surface (expected '" +
           token.buckwalter + "')");
    }
    turn_->tokens.push_back(std::move(token));
    tag_cells_.push_back(cols[4]);
    da_cells_.push_back(cols[5]);
  }

  void FinishTurn() {
    if (!turn_) return;
    Turn turn = std::move(*turn_);
    turn_.reset();
    auto fail = [&](const std::string& why) {
      throw ValidationError(source_ + ":" + std::to_string(turn_start_line_) +
                            ": turn " + turn.Name() + ": " + why);
    };
    if (turn.tokens.empty()) fail("turn has no tokens");

    bool any_tag = std::any_of(tag_cells_.begin(), tag_cells_.end(),
                               [](const std::string& c) { return c != kEmpty; });
    if (any_tag) {
      std::vector<SegTag> tags;
      for (std::size_t i = 0; i < tag_cells_.size(); ++i) {
        auto tag = ParseSegTag(tag_cells_[i]);
        if (!tag) fail("token " + std::to_string(i) + ": bad tag '" + tag_cells_[i] + "'");
        tags.push_back(*tag);
      }
      turn.tags = std::move(tags);
    }

    std::vector<std::string> labels;
    bool any_label = false;
    bool missing_label = false;
    for (std::size_t i = 0; i < da_cells_.size(); ++i) {
      bool is_begin = turn.tags && (*turn.tags)[i] == SegTag::kBSeg;
      bool has_label = da_cells_[i] != kEmpty;
      if (has_label && !is_begin) {
        fail("token " + std::to_string(i) + ": dialogue act on a non-B-Seg row");
      }
      if (is_begin) {
        any_label |= has_label;
        missing_label |= !has_label;
        labels.push_back(da_cells_[i]);
      }
    }
    if (any_label && missing_label) fail("dialogue act missing on some B-Seg rows");
    if (any_label) turn.da_labels = std::move(labels);

    try {
      turn.Validate();
    } catch (const ValidationError& e) {
      throw ValidationError(source_ + ":" + std::to_string(turn_start_line_) + ": " +
                            e.what());
    }
    dialogues_.back().turns.push_back(std::move(turn));
  }

  std::string source_;
  int line_no_ = 0;
  int turn_start_line_ = 0;
  std::vector<Dialogue> dialogues_;
  std::optional<Turn> turn_;
  std::vector<std::string> tag_cells_;
  std::vector<std::string> da_cells_;
};

// Deterministic Fisher-Yates; independent of the standard library's
// distribution implementations.
template <typename T>
void SeededShuffle(std::vector<T>* v, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = v->size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap((*v)[i - 1], (*v)[j]);
  }
}

}  // namespace

std::string_view ToString(SegTag tag) {
  return tag == SegTag::kBSeg ? "B-Seg" : "I-Seg";
}

std::optional<SegTag> ParseSegTag(std::string_view s) {
  if (s == "B-Seg") return SegTag::kBSeg;
  if (s == "I-Seg") return SegTag::kISeg;
  return std::nullopt;
}

std::string_view ToString(Speaker s) {
  return s == Speaker::kOperator ? "Operator" : "Customer";
}

std::string_view ToString(Genre g) {
  switch (g) {
    case Genre::kBanks:
      return "Banks";
    case Genre::kFlights:
      return "Flights";
    case Genre::kMno:
      return "MNO";
  }
  return "?";
}

std::string_view ToString(Medium m) {
  return m == Medium::kSpoken ? "Spoken" : "IM";
}

std::optional<Speaker> ParseSpeaker(std::string_view s) {
  if (s == "Operator") return Speaker::kOperator;
  if (s == "Customer") return Speaker::kCustomer;
  return std::nullopt;
}

std::optional<Genre> ParseGenre(std::string_view s) {
  if (s == "Banks") return Genre::kBanks;
  if (s == "Flights") return Genre::kFlights;
  if (s == "MNO") return Genre::kMno;
  return std::nullopt;
}

std::optional<Medium> ParseMedium(std::string_view s) {
  if (s == "Spoken") return Medium::kSpoken;
  if (s == "IM") return Medium::kIm;
  return std::nullopt;
}

Token MakeToken(ArabicString surface, std::size_t index, std::string pos) {
  Token t;
  t.buckwalter = ToBuckwalter(surface);
  t.surface = std::move(surface);
  t.index = index;
  t.pos = std::move(pos);
  return t;
}

std::vector<Span> TagsToSpans(std::span<const SegTag> tags) {
  if (tags.empty()) throw ValidationError("empty tag sequence");
  if (tags[0] != SegTag::kBSeg) {
    throw ValidationError("tag sequence does not start with B-Seg");
  }
  std::vector<Span> spans;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i] == SegTag::kBSeg) {
      if (!spans.empty()) spans.back().end = i;
      spans.push_back({i, tags.size()});
    }
  }
  return spans;
}

std::vector<SegTag> SpansToTags(std::span<const Span> spans, std::size_t n) {
  if (n == 0 || spans.empty()) throw ValidationError("empty span list");
  std::vector<SegTag> tags(n, SegTag::kISeg);
  std::size_t expected_begin = 0;
  for (const Span& s : spans) {
    if (s.begin != expected_begin || s.end <= s.begin || s.end > n) {
      throw ValidationError("spans do not partition the turn");
    }
    tags[s.begin] = SegTag::kBSeg;
    expected_begin = s.end;
  }
  if (expected_begin != n) throw ValidationError("spans do not cover the turn");
  return tags;
}

void Turn::Validate() const {
  auto fail = [&](const std::string& why) {
    throw ValidationError("turn " + Name() + ": " + why);
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].index != i) fail("token index mismatch at " + std::to_string(i));
    if (tokens[i].buckwalter != ToBuckwalter(tokens[i].surface)) {
      fail("token " + std::to_string(i) + ": Buckwalter form out of sync");
    }
  }
  if (tags) {
    if (tags->size() != tokens.size()) {
      fail(std::to_string(tags->size()) + " tags for " +
           std::to_string(tokens.size()) + " tokens");
    }
    if (!tags->empty() && tags->front() != SegTag::kBSeg) {
      fail("first tag is I-Seg");
    }
  }
  if (da_labels) {
    if (!tags) fail("dialogue acts without segmentation tags");
    auto n_begin = static_cast<std::size_t>(
        std::count(tags->begin(), tags->end(), SegTag::kBSeg));
    if (da_labels->size() != n_begin) {
      fail(std::to_string(da_labels->size()) + " dialogue acts for " +
           std::to_string(n_begin) + " utterances");
    }
  }
}

std::vector<ArabicString> Turn::Surfaces() const {
  std::vector<ArabicString> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::vector<std::string> Turn::RawPos() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.pos);
  return out;
}

std::size_t Turn::UtteranceCount() const {
  if (!tags) return 1;
  return static_cast<std::size_t>(
      std::count(tags->begin(), tags->end(), SegTag::kBSeg));
}

std::vector<Dialogue> ReadCorpus(std::istream& in, const std::string& source) {
  return CorpusReader(source).Read(in);
}

std::vector<Dialogue> LoadCorpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus " + path);
  return ReadCorpus(in, path);
}

void WriteCorpus(const std::vector<Dialogue>& dialogues, std::ostream& out) {
  for (const auto& d : dialogues) {
    out << kDialoguePrefix << ' ' << d.id << " genre=" << ToString(d.genre)
        << " medium=" << ToString(d.medium) << '\n';
    for (const auto& turn : d.turns) {
      out << kTurnPrefix << ' ' << turn.turn_id
          << " speaker=" << ToString(turn.speaker) << '\n';
      std::size_t utterance = 0;
      for (std::size_t i = 0; i < turn.tokens.size(); ++i) {
        const Token& t = turn.tokens[i];
        out << i << '\t' << t.surface.str() << '\t' << t.buckwalter << '\t'
            << (t.pos.empty() ? kEmpty : std::string_view(t.pos)) << '\t';
        if (!turn.tags) {
          out << kEmpty << '\t' << kEmpty;
        } else {
          SegTag tag = (*turn.tags)[i];
          out << ToString(tag) << '\t';
          if (tag == SegTag::kBSeg && turn.da_labels) {
            out << (*turn.da_labels)[utterance];
          } else {
            out << kEmpty;
          }
          if (tag == SegTag::kBSeg) ++utterance;
        }
        out << '\n';
      }
      out << '\n';
    }
  }
}

void SaveCorpus(const std::vector<Dialogue>& dialogues, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write corpus " + path);
  WriteCorpus(dialogues, out);
  out.flush();
  if (!out) throw IoError("error writing corpus " + path);
}

std::vector<std::string> SpeakerRepeats(const std::vector<Dialogue>& dialogues) {
  std::vector<std::string> out;
  for (const auto& d : dialogues) {
    for (std::size_t i = 1; i < d.turns.size(); ++i) {
      if (d.turns[i].speaker == d.turns[i - 1].speaker) {
        out.push_back(d.turns[i].Name());
      }
    }
  }
  return out;
}

std::array<std::size_t, 3> BucketSizes(std::size_t n, const SplitRatios& ratios) {
  const std::array<double, 3> share = {ratios.train * static_cast<double>(n),
                                       ratios.dev * static_cast<double>(n),
                                       ratios.test * static_cast<double>(n)};
  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> frac{};
  std::size_t assigned = 0;
  for (int k = 0; k < 3; ++k) {
    sizes[k] = static_cast<std::size_t>(std::floor(share[k] + 1e-9));
    frac[k] = share[k] - static_cast<double>(sizes[k]);
    assigned += sizes[k];
  }
  std::array<int, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return frac[a] > frac[b]; });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++sizes[order[i % 3]];
  return sizes;
}

CorpusSplit SplitCorpus(const std::vector<Dialogue>& dialogues,
                        const SplitRatios& ratios,
                        std::optional<std::uint64_t> shuffle_seed) {
  if (ratios.train < 0 || ratios.dev < 0 || ratios.test < 0 ||
      std::abs(ratios.train + ratios.dev + ratios.test - 1.0) > 1e-9) {
    throw ValidationError("split ratios must be non-negative and sum to 1");
  }
  std::map<Genre, std::vector<TurnRef>> by_genre;
  for (std::size_t d = 0; d < dialogues.size(); ++d) {
    auto& refs = by_genre[dialogues[d].genre];
    for (std::size_t t = 0; t < dialogues[d].turns.size(); ++t) {
      refs.push_back({d, t});
    }
  }
  CorpusSplit split;
  for (auto& [genre, refs] : by_genre) {
    if (refs.size() < kMinTurnsPerDomain) {
      throw ValidationError("domain " + std::string(ToString(genre)) + " has " +
                            std::to_string(refs.size()) +
                            " turns; at least 10 are needed to split");
    }
    if (shuffle_seed) {
      SeededShuffle(&refs, *shuffle_seed + static_cast<std::uint64_t>(genre));
    }
    auto sizes = BucketSizes(refs.size(), ratios);
    auto first = refs.begin();
    auto take = [&](std::size_t count, std::vector<TurnRef>* bucket) {
      std::vector<TurnRef> part(first, first + static_cast<std::ptrdiff_t>(count));
      std::sort(part.begin(), part.end());
      bucket->insert(bucket->end(), part.begin(), part.end());
      first += static_cast<std::ptrdiff_t>(count);
    };
    take(sizes[0], &split.train);
    take(sizes[1], &split.dev);
    take(sizes[2], &split.test);
  }
  return split;
}

std::vector<Dialogue> Materialize(const std::vector<Dialogue>& dialogues,
                                  std::span<const TurnRef> refs) {
  std::vector<Dialogue> out;
  std::size_t last = static_cast<std::size_t>(-1);
  for (const TurnRef& ref : refs) {
    const Dialogue& src = dialogues.at(ref.dialogue);
    if (out.empty() || ref.dialogue != last) {
      out.push_back({src.id, src.genre, src.medium, {}});
      last = ref.dialogue;
    }
    out.back().turns.push_back(src.turns.at(ref.turn));
  }
  return out;
}

CorpusStats ComputeStats(const std::vector<Dialogue>& dialogues) {
  CorpusStats s;
  s.n_dialogues = dialogues.size();
  for (const auto& d : dialogues) {
    ++s.dialogues_per_genre[d.genre];
    s.turns_per_genre[d.genre] += d.turns.size();
    for (const auto& turn : d.turns) {
      ++s.n_turns;
      s.n_words += turn.tokens.size();
      std::size_t utterances = turn.UtteranceCount();
      s.n_utterances += utterances;
      if (!turn.tags) ++s.n_untagged_turns;
      if (utterances >= 2) {
        ++s.n_segmented_turns;
        s.n_utterances_in_segmented_turns += utterances;
      }
    }
  }
  s.n_speaker_repeats = SpeakerRepeats(dialogues).size();
  if (s.n_turns > 0) {
    s.words_per_turn = static_cast<double>(s.n_words) / static_cast<double>(s.n_turns);
  }
  if (s.n_utterances > 0) {
    s.words_per_utterance =
        static_cast<double>(s.n_words) / static_cast<double>(s.n_utterances);
  }
  return s;
}

std::string FormatStats(const CorpusStats& s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1);
  out << "Total Number of Dialogues\t" << s.n_dialogues << '\n';
  for (const auto& [genre, n] : s.dialogues_per_genre) {
    out << "  " << ToString(genre) << " dialogues\t" << n << '\n';
  }
  out << "Total Number of Turns\t" << s.n_turns << '\n';
  for (const auto& [genre, n] : s.turns_per_genre) {
    out << "  " << ToString(genre) << " turns\t" << n << '\n';
  }
  out << "Number of Segmented Turns\t" << s.n_segmented_turns << '\n'
      << "Number of Utterances from Segmented Turns\t"
      << s.n_utterances_in_segmented_turns << '\n'
      << "Total Number of Utterances\t" << s.n_utterances << '\n'
      << "Words\t" << s.n_words << '\n'
      << "Words per Turn\t" << s.words_per_turn << '\n'
      << "Words per Utterance\t" << s.words_per_utterance << '\n';
  if (s.n_untagged_turns > 0) {
    out << "Untagged Turns\t" << s.n_untagged_turns << '\n';
  }
  if (s.n_speaker_repeats > 0) {
    out << "Turns Repeating Previous Speaker\t" << s.n_speaker_repeats << '\n';
  }
  return out.str();
}

}  // namespace useg
