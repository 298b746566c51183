#ifndef USEG_CORPUS_H_
#define USEG_CORPUS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "useg/arabic_text.h"

namespace useg {

enum class SegTag { kBSeg, kISeg };

std::string_view ToString(SegTag tag);
std::optional<SegTag> ParseSegTag(std::string_view s);

enum class Speaker { kOperator, kCustomer };
enum class Genre { kBanks, kFlights, kMno };
enum class Medium { kSpoken, kIm };

std::string_view ToString(Speaker s);
std::string_view ToString(Genre g);
std::string_view ToString(Medium m);
std::optional<Speaker> ParseSpeaker(std::string_view s);
std::optional<Genre> ParseGenre(std::string_view s);
std::optional<Medium> ParseMedium(std::string_view s);

struct Token {
  ArabicString surface;
  std::string buckwalter;  // always ToBuckwalter(surface)
  std::size_t index = 0;
  std::string pos;  // raw analyzer tag, empty when absent

  friend bool operator==(const Token&, const Token&) = default;
};

Token MakeToken(ArabicString surface, std::size_t index, std::string pos = "");

// Half-open token range [begin, end) holding one utterance.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

// Maximal runs starting at each BSeg. Throws ValidationError for an empty
// sequence or one that does not start with BSeg.
std::vector<Span> TagsToSpans(std::span<const SegTag> tags);
// Inverse of TagsToSpans. Throws unless the spans partition [0, n) in order.
std::vector<SegTag> SpansToTags(std::span<const Span> spans, std::size_t n);

struct Turn {
  std::string dialogue_id;
  std::string turn_id;
  Speaker speaker = Speaker::kOperator;
  std::vector<Token> tokens;
  std::optional<std::vector<SegTag>> tags;
  std::optional<std::vector<std::string>> da_labels;  // one per utterance

  // Throws ValidationError naming the turn when tags or DA labels are
  // inconsistent with the tokens.
  void Validate() const;
  std::vector<ArabicString> Surfaces() const;
  std::vector<std::string> RawPos() const;
  // Utterance count; an untagged turn counts as a single utterance.
  std::size_t UtteranceCount() const;
  std::string Name() const { return dialogue_id + "/" + turn_id; }

  friend bool operator==(const Turn&, const Turn&) = default;
};

struct Dialogue {
  std::string id;
  Genre genre = Genre::kBanks;
  Medium medium = Medium::kSpoken;
  std::vector<Turn> turns;

  friend bool operator==(const Dialogue&, const Dialogue&) = default;
};

// Column format, one token per line:
//   # dialogue: <id> genre=<Banks|Flights|MNO> medium=<Spoken|IM>
//   # turn: <id> speaker=<Operator|Customer>
//   INDEX \t SURFACE \t BUCKWALTER \t POS \t TAG \t DA
// POS, TAG and DA may be "_"; DA only on B-Seg rows; a blank line ends a
// turn. Errors carry the source name and line number.
std::vector<Dialogue> ReadCorpus(std::istream& in,
                                 const std::string& source = "<stream>");
std::vector<Dialogue> LoadCorpus(const std::string& path);
void WriteCorpus(const std::vector<Dialogue>& dialogues, std::ostream& out);
void SaveCorpus(const std::vector<Dialogue>& dialogues, const std::string& path);

// Turn IDs ("dialogue/turn") whose speaker repeats the previous turn's.
std::vector<std::string> SpeakerRepeats(const std::vector<Dialogue>& dialogues);

struct TurnRef {
  std::size_t dialogue = 0;
  std::size_t turn = 0;

  friend bool operator==(const TurnRef&, const TurnRef&) = default;
  friend auto operator<=>(const TurnRef&, const TurnRef&) = default;
};

struct SplitRatios {
  double train = 0.70;
  double dev = 0.20;
  double test = 0.10;
};

struct CorpusSplit {
  std::vector<TurnRef> train;
  std::vector<TurnRef> dev;
  std::vector<TurnRef> test;
};

// Bucket sizes for n items: floors of the exact shares, with the leftover
// items handed out by largest fractional part (ties to the earlier bucket).
// Each size is within one of its exact share.
std::array<std::size_t, 3> BucketSizes(std::size_t n, const SplitRatios& ratios);

// Per genre, turns in document order are cut into contiguous train, dev and
// test ranges. With a shuffle seed the turns of each genre are permuted
// first and each bucket is then restored to document order. Throws for
// ratios that are negative or do not sum to 1, and for any genre with fewer
// than 10 turns.
CorpusSplit SplitCorpus(const std::vector<Dialogue>& dialogues,
                        const SplitRatios& ratios = {},
                        std::optional<std::uint64_t> shuffle_seed = {});

// Copies the referenced turns into dialogues, one per run of consecutive
// refs from the same source dialogue.
std::vector<Dialogue> Materialize(const std::vector<Dialogue>& dialogues,
                                  std::span<const TurnRef> refs);

struct CorpusStats {
  std::size_t n_dialogues = 0;
  std::size_t n_turns = 0;
  std::size_t n_segmented_turns = 0;  // turns with two or more utterances
  std::size_t n_utterances = 0;
  std::size_t n_utterances_in_segmented_turns = 0;
  std::size_t n_words = 0;
  std::size_t n_untagged_turns = 0;
  std::size_t n_speaker_repeats = 0;
  double words_per_turn = 0.0;
  double words_per_utterance = 0.0;
  std::map<Genre, std::size_t> dialogues_per_genre;
  std::map<Genre, std::size_t> turns_per_genre;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

CorpusStats ComputeStats(const std::vector<Dialogue>& dialogues);
std::string FormatStats(const CorpusStats& stats);

}  // namespace useg

#endif  // USEG_CORPUS_H_
