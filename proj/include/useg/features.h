#ifndef USEG_FEATURES_H_
#define USEG_FEATURES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "useg/corpus.h"
#include "useg/pos_provider.h"

namespace useg {

inline constexpr int kMinWindow = 1;
inline constexpr int kMaxWindow = 5;
inline constexpr int kMaxPrevTags = 5;

// Which features are extracted around each token.
struct FeatureTemplate {
  int window_before = 2;
  int window_after = 2;
  int n_prev_tags = 3;
  bool use_pos = true;
  // Adjacent word pairs inside the window, in addition to unigrams.
  bool bigrams = false;
  // POS flags at every window offset; false restricts them to offset 0.
  bool pos_all_offsets = true;

  // Throws ValidationError when a field is out of range.
  void Validate() const;

  // Single-line form used in model files, e.g.
  // "-2/+2 prev_tags=3 pos=1 bigrams=0 pos_offsets=all".
  std::string Serialize() const;
  static FeatureTemplate Parse(std::string_view line);

  friend bool operator==(const FeatureTemplate&, const FeatureTemplate&) = default;
};

// "-2/+2" <-> {2, 2}. Parsing checks syntax only; range checks are left to
// FeatureTemplate::Validate.
std::pair<int, int> ParseWindow(std::string_view spec);
std::string FormatWindow(int before, int after);

// Bijection between feature strings and dense indices. Indices follow first
// insertion. Once frozen, the alphabet refuses new strings.
class Alphabet {
 public:
  std::optional<std::uint32_t> Find(std::string_view feature) const;
  // Returns the existing or new index. Throws std::logic_error when frozen
  // and ValidationError for strings containing a tab or newline.
  std::uint32_t Add(std::string_view feature);

  void Freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }
  std::size_t size() const { return features_.size(); }
  const std::string& feature(std::uint32_t index) const { return features_.at(index); }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.features_ == b.features_ && a.frozen_ == b.frozen_;
  }

 private:
  std::vector<std::string> features_;
  std::unordered_map<std::string, std::uint32_t> index_;
  bool frozen_ = false;
};

// Binary sparse vector: strictly increasing alphabet indices.
struct FeatureVector {
  std::vector<std::uint32_t> indices;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

FeatureVector MakeFeatureVector(std::vector<std::uint32_t> indices);

// What the extractor sees of one turn: Buckwalter word forms and aligned POS
// evidence.
struct TokenSequence {
  std::vector<std::string> words;
  std::vector<PosInfo> pos;
};

// A token sequence with gold tags, used at training time.
struct LabeledSequence {
  TokenSequence tokens;
  std::vector<SegTag> tags;
};

// Feature strings for one position, in emission order (words, bigrams, POS
// flags, previous tags). `prev_tags` must cover at least positions
// [0, position); entries beyond are ignored.
std::vector<std::string> FeatureStrings(const TokenSequence& seq,
                                        std::span<const SegTag> prev_tags,
                                        std::size_t position,
                                        const FeatureTemplate& tmpl);

// Prediction-time extraction: strings unknown to the alphabet are dropped.
FeatureVector Extract(const TokenSequence& seq, std::span<const SegTag> prev_tags,
                      std::size_t position, const FeatureTemplate& tmpl,
                      const Alphabet& alphabet);

// Training-time extraction: an unfrozen alphabet grows; a frozen one behaves
// as in the const overload.
FeatureVector Extract(const TokenSequence& seq, std::span<const SegTag> prev_tags,
                      std::size_t position, const FeatureTemplate& tmpl,
                      Alphabet* alphabet);

// Every feature string from gold-history extraction over all positions of
// all sequences, frozen.
Alphabet BuildAlphabet(std::span<const LabeledSequence> sequences,
                       const FeatureTemplate& tmpl);

}  // namespace useg

#endif  // USEG_FEATURES_H_
