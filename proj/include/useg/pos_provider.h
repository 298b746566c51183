#ifndef USEG_POS_PROVIDER_H_
#define USEG_POS_PROVIDER_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "useg/arabic_text.h"

namespace useg {

// The three boolean POS signals the feature templates consume. The flags
// are independent: a proper noun need not also be marked as a noun.
struct PosInfo {
  std::string tag = "UNK";
  bool is_conjunction = false;
  bool is_noun = false;
  bool is_proper_noun = false;

  friend bool operator==(const PosInfo&, const PosInfo&) = default;
};

// Deterministic per-token POS evidence. Implementations are immutable after
// construction and may be shared across threads.
class PosProvider {
 public:
  virtual ~PosProvider() = default;
  virtual std::string name() const = 0;
  // One PosInfo per token, aligned by index.
  virtual std::vector<PosInfo> TagTokens(
      const std::vector<ArabicString>& tokens) const = 0;
};

// Closed-list tagger: conjunctions, nouns and a proper-noun gazetteer.
// Anything not listed is "UNK". A word in several lists gets every flag;
// its tag is the first of CONJ, NOUN_PROP, NOUN that applies.
class LexiconPosProvider : public PosProvider {
 public:
  LexiconPosProvider(std::set<std::string> conjunctions,
                     std::set<std::string> nouns,
                     std::set<std::string> proper_nouns);

  // Loads `conjunctions.txt`, `nouns.txt` and `proper_nouns.txt` from a data
  // directory. Missing noun lists are treated as empty; a missing
  // conjunction list is an error.
  static LexiconPosProvider FromDirectory(const std::string& dir);

  std::string name() const override { return "lexicon"; }
  std::vector<PosInfo> TagTokens(
      const std::vector<ArabicString>& tokens) const override;

  PosInfo TagWord(const ArabicString& word) const;

 private:
  std::set<std::string> conjunctions_;
  std::set<std::string> nouns_;
  std::set<std::string> proper_nouns_;
};

// Maps raw tags from an external analyzer to flags by case-insensitive
// longest-prefix match against a `PREFIX=conj|noun|propn` config.
class TagMapping {
 public:
  enum class Flag { kConjunction, kNoun, kProperNoun };

  TagMapping() = default;
  static TagMapping Load(const std::string& path);
  static TagMapping Parse(const std::string& text,
                          const std::string& source = "<string>");

  void Add(std::string prefix, Flag flag);

  // Empty and "_" tags map to all-false silently. Other unmapped tags map
  // to all-false and, when `unmapped` is given, are recorded there once per
  // tag name.
  PosInfo Map(const std::string& raw_tag,
              std::set<std::string>* unmapped = nullptr) const;
  std::vector<PosInfo> MapAll(const std::vector<std::string>& raw_tags,
                              std::set<std::string>* unmapped = nullptr) const;

 private:
  std::map<std::string, Flag> prefixes_;  // upper-cased
};

// Reads one normalized word per line; `#` comments and blanks skipped.
std::set<std::string> LoadWordList(const std::string& path);

}  // namespace useg

#endif  // USEG_POS_PROVIDER_H_
