#ifndef USEG_SEGMENTER_H_
#define USEG_SEGMENTER_H_

#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "useg/corpus.h"
#include "useg/features.h"
#include "useg/linear_svm.h"
#include "useg/pos_provider.h"
#include "useg/wawanizer.h"

namespace useg {

// Where corpus turns get their POS evidence: a provider applied to the
// surfaces, or the file's POS column run through a tag mapping. Training and
// tagging must use the same source.
class TurnPosSource {
 public:
  static TurnPosSource FromProvider(std::shared_ptr<const PosProvider> provider);
  static TurnPosSource FromGoldTags(TagMapping mapping);

  std::vector<PosInfo> ForTurn(const Turn& turn,
                               std::set<std::string>* unmapped = nullptr) const;
  std::string name() const;

 private:
  std::shared_ptr<const PosProvider> provider_;
  std::shared_ptr<const TagMapping> mapping_;
};

// Whitespace tokenization, per-token normalization, waw splitting and
// Buckwalter forms. Throws ValidationError on blank input.
std::vector<Token> Preprocess(std::string_view raw_turn, const WawLexicon& lexicon);

TokenSequence MakeSequence(const std::vector<Token>& tokens,
                           std::vector<PosInfo> pos);

// Greedy left-to-right decoding. Position 0 is always BSeg; each later
// position is predicted from features over the tags already decoded. Every
// model class must name a SegTag.
std::vector<SegTag> GreedyDecode(const LinearModel& model, const TokenSequence& seq);

// Gold-history training sequences from tagged turns. Throws for a turn
// without tags.
std::vector<LabeledSequence> MakeTrainingSequences(std::span<const Turn> turns,
                                                   const TurnPosSource& pos,
                                                   std::set<std::string>* unmapped = nullptr);

// Builds the alphabet, extracts one example per token with gold history and
// trains the one-vs-rest model with classes ordered B-Seg, I-Seg.
LinearModel TrainSegmenter(std::span<const Turn> turns, const FeatureTemplate& tmpl,
                           const TrainConfig& config, const TurnPosSource& pos,
                           std::vector<std::string>* warnings = nullptr);

// All turns of the dialogues, in order.
std::vector<Turn> FlattenTurns(const std::vector<Dialogue>& dialogues);

// Copy of the dialogues with every turn re-tagged by the model. DA labels
// are dropped since they no longer align with the predicted utterances.
std::vector<Dialogue> TagCorpus(const std::vector<Dialogue>& dialogues,
                                const LinearModel& model, const TurnPosSource& pos);

struct Segmentation {
  std::vector<Token> tokens;
  std::vector<SegTag> tags;
  std::vector<Span> utterances;
};

// Surface text of each utterance, tokens joined by single spaces.
std::vector<std::string> UtteranceTexts(const Segmentation& s);

// Preprocessing, POS tagging and decoding over raw turn text. Immutable and
// safe to share between threads.
class Segmenter {
 public:
  Segmenter(WawLexicon lexicon, std::shared_ptr<const PosProvider> pos,
            LinearModel model);

  std::vector<Token> Preprocess(std::string_view raw_turn) const;
  std::vector<SegTag> TagTurn(const std::vector<Token>& tokens) const;
  Segmentation Segment(std::string_view raw_turn) const;

  const LinearModel& model() const { return model_; }
  const WawLexicon& lexicon() const { return lexicon_; }

 private:
  WawLexicon lexicon_;
  std::shared_ptr<const PosProvider> pos_;
  LinearModel model_;
};

}  // namespace useg

#endif  // USEG_SEGMENTER_H_
