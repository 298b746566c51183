#include "useg/segmenter.h"

#include "useg/error.h"

namespace useg {
namespace {

std::vector<SegTag> ModelTags(const LinearModel& model) {
  std::vector<SegTag> tags;
  for (const auto& c : model.classes()) {
    auto tag = ParseSegTag(c);
    if (!tag) throw ValidationError("model class '" + c + "' is not a segmentation tag");
    tags.push_back(*tag);
  }
  return tags;
}

}  // namespace

TurnPosSource TurnPosSource::FromProvider(std::shared_ptr<const PosProvider> provider) {
  TurnPosSource s;
  s.provider_ = std::move(provider);
  return s;
}

TurnPosSource TurnPosSource::FromGoldTags(TagMapping mapping) {
  TurnPosSource s;
  s.mapping_ = std::make_shared<const TagMapping>(std::move(mapping));
  return s;
}

std::vector<PosInfo> TurnPosSource::ForTurn(const Turn& turn,
                                            std::set<std::string>* unmapped) const {
  if (mapping_) return mapping_->MapAll(turn.RawPos(), unmapped);
  if (provider_) return provider_->TagTokens(turn.Surfaces());
  return std::vector<PosInfo>(turn.tokens.size());
}

std::string TurnPosSource::name() const {
  if (mapping_) return "gold";
  if (provider_) return provider_->name();
  return "none";
}

std::vector<Token> Preprocess(std::string_view raw_turn, const WawLexicon& lexicon) {
  std::vector<ArabicString> words;
  for (const auto& w : SplitWhitespace(raw_turn)) {
    ArabicString normalized = Normalize(ArabicString(w));
    if (!normalized.empty()) words.push_back(std::move(normalized));
  }
  if (words.empty()) throw ValidationError("empty turn");
  std::vector<Token> tokens;
  for (auto& word : WawanizeTurn(words, lexicon)) {
    tokens.push_back(MakeToken(std::move(word), tokens.size()));
  }
  return tokens;
}

TokenSequence MakeSequence(const std::vector<Token>& tokens, std::vector<PosInfo> pos) {
  TokenSequence seq;
  seq.words.reserve(tokens.size());
  for (const auto& t : tokens) seq.words.push_back(t.buckwalter);
  seq.pos = std::move(pos);
  return seq;
}

std::vector<SegTag> GreedyDecode(const LinearModel& model, const TokenSequence& seq) {
  const std::vector<SegTag> class_tags = ModelTags(model);
  std::vector<SegTag> tags;
  if (seq.words.empty()) return tags;
  tags.reserve(seq.words.size());
  tags.push_back(SegTag::kBSeg);
  for (std::size_t i = 1; i < seq.words.size(); ++i) {
    FeatureVector fv = Extract(seq, tags, i, model.feature_template(), model.alphabet());
    tags.push_back(class_tags[model.PredictIndex(fv)]);
  }
  return tags;
}

std::vector<LabeledSequence> MakeTrainingSequences(std::span<const Turn> turns,
                                                   const TurnPosSource& pos,
                                                   std::set<std::string>* unmapped) {
  std::vector<LabeledSequence> out;
  out.reserve(turns.size());
  for (const Turn& turn : turns) {
    if (!turn.tags) throw ValidationError("turn " + turn.Name() + " has no gold tags");
    turn.Validate();
    out.push_back({MakeSequence(turn.tokens, pos.ForTurn(turn, unmapped)), *turn.tags});
  }
  return out;
}

LinearModel TrainSegmenter(std::span<const Turn> turns, const FeatureTemplate& tmpl,
                           const TrainConfig& config, const TurnPosSource& pos,
                           std::vector<std::string>* warnings) {
  tmpl.Validate();
  std::set<std::string> unmapped;
  std::vector<LabeledSequence> sequences = MakeTrainingSequences(turns, pos, &unmapped);
  if (warnings) {
    for (const auto& tag : unmapped) {
      warnings->push_back("POS tag '" + tag + "' has no mapping; flags left unset");
    }
  }
  Alphabet alphabet = BuildAlphabet(sequences, tmpl);

  std::vector<Example> examples;
  for (const auto& seq : sequences) {
    for (std::size_t i = 0; i < seq.tags.size(); ++i) {
      examples.push_back({Extract(seq.tokens, seq.tags, i, tmpl, alphabet),
                          std::string(ToString(seq.tags[i]))});
    }
  }
  std::vector<std::string> classes = {std::string(ToString(SegTag::kBSeg)),
                                      std::string(ToString(SegTag::kISeg))};
  return Train(examples, std::move(alphabet), tmpl, config, std::move(classes), warnings);
}

std::vector<Turn> FlattenTurns(const std::vector<Dialogue>& dialogues) {
  std::vector<Turn> out;
  for (const auto& d : dialogues) out.insert(out.end(), d.turns.begin(), d.turns.end());
  return out;
}

std::vector<Dialogue> TagCorpus(const std::vector<Dialogue>& dialogues,
                                const LinearModel& model, const TurnPosSource& pos) {
  std::vector<Dialogue> out = dialogues;
  for (auto& d : out) {
    for (auto& turn : d.turns) {
      turn.tags = GreedyDecode(model, MakeSequence(turn.tokens, pos.ForTurn(turn)));
      turn.da_labels.reset();
    }
  }
  return out;
}

std::vector<std::string> UtteranceTexts(const Segmentation& s) {
  std::vector<std::string> out;
  for (const Span& span : s.utterances) {
    std::string text;
    for (std::size_t i = span.begin; i < span.end; ++i) {
      if (i > span.begin) text.push_back(' ');
      text += s.tokens[i].surface.str();
    }
    out.push_back(std::move(text));
  }
  return out;
}

Segmenter::Segmenter(WawLexicon lexicon, std::shared_ptr<const PosProvider> pos,
                     LinearModel model)
    : lexicon_(std::move(lexicon)), pos_(std::move(pos)), model_(std::move(model)) {
  if (!pos_) throw ValidationError("segmenter needs a POS provider");
  ModelTags(model_);
}

std::vector<Token> Segmenter::Preprocess(std::string_view raw_turn) const {
  return useg::Preprocess(raw_turn, lexicon_);
}

std::vector<SegTag> Segmenter::TagTurn(const std::vector<Token>& tokens) const {
  if (tokens.empty()) throw ValidationError("cannot tag an empty turn");
  std::vector<ArabicString> surfaces;
  for (const auto& t : tokens) surfaces.push_back(t.surface);
  return GreedyDecode(model_, MakeSequence(tokens, pos_->TagTokens(surfaces)));
}

Segmentation Segmenter::Segment(std::string_view raw_turn) const {
  Segmentation s;
  s.tokens = Preprocess(raw_turn);
  s.tags = TagTurn(s.tokens);
  s.utterances = TagsToSpans(s.tags);
  return s;
}

}  // namespace useg
