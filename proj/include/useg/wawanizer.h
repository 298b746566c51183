#ifndef USEG_WAWANIZER_H_
#define USEG_WAWANIZER_H_

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "useg/arabic_text.h"

namespace useg {

// The conjunction waw, U+0648.
inline const ArabicString& Waw() {
  static const ArabicString waw("و");
  return waw;
}

// Normalized word forms used to decide whether a leading waw is a detached
// conjunction.
class WawLexicon {
 public:
  WawLexicon() = default;
  explicit WawLexicon(std::string source) : source_(std::move(source)) {}

  // One word per line, `#` comments and blank lines ignored. Lines with any
  // non-Arabic-script character, or the bare conjunction, are skipped with a
  // warning naming the line number.
  static WawLexicon Load(const std::string& path,
                         std::vector<std::string>* warnings = nullptr);

  // Normalizes before inserting. Returns false for rejected or duplicate
  // entries.
  bool Insert(const ArabicString& word);

  bool Contains(const ArabicString& word) const {
    return words_.count(word.str()) > 0;
  }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::string& source() const { return source_; }
  const std::set<std::string>& words() const { return words_; }

 private:
  std::set<std::string> words_;
  std::string source_;
};

// ["و", rest] when the token starts with waw, has at least three
// codepoints, the remainder is a lexicon word and the full token is not.
// Otherwise [token].
std::vector<ArabicString> SplitWaw(const ArabicString& token,
                                   const WawLexicon& lexicon);

std::vector<ArabicString> WawanizeTurn(const std::vector<ArabicString>& tokens,
                                       const WawLexicon& lexicon);

}  // namespace useg

#endif  // USEG_WAWANIZER_H_
