#ifndef USEG_ARABIC_TEXT_H_
#define USEG_ARABIC_TEXT_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "useg/error.h"

namespace useg {

// UTF-8 text held in Unicode NFC. Every constructor normalizes, so two
// ArabicStrings compare equal iff their canonical forms do.
class ArabicString {
 public:
  ArabicString() = default;
  explicit ArabicString(std::string_view utf8);

  const std::string& str() const { return text_; }
  bool empty() const { return text_.empty(); }

  friend bool operator==(const ArabicString&, const ArabicString&) = default;
  friend auto operator<=>(const ArabicString&, const ArabicString&) = default;

 private:
  std::string text_;
};

// UTF-8 helpers shared by the text modules. Ill-formed bytes decode to
// U+FFFD.
std::u32string DecodeUtf8(std::string_view utf8);
std::string EncodeUtf8(std::u32string_view codepoints);
void AppendUtf8(char32_t cp, std::string* out);
std::size_t CodepointCount(std::string_view utf8);

bool IsUnicodeWhitespace(char32_t cp);
// Arabic, Arabic Supplement and the two presentation-form blocks.
bool IsArabicScript(char32_t cp);

// Unifies the alif variants, teh marbuta and alif maksura, collapses
// whitespace runs to one space and trims. Diacritics are kept.
ArabicString Normalize(const ArabicString& s);

// Splits on Unicode whitespace.
std::vector<std::string> SplitWhitespace(std::string_view utf8);

class TransliterationError : public ValidationError {
 public:
  TransliterationError(std::size_t position, char symbol);
  std::size_t position() const { return position_; }
  char symbol() const { return symbol_; }

 private:
  std::size_t position_;
  char symbol_;
};

// Buckwalter mapping between Arabic codepoints and single ASCII symbols.
class TransliterationTable {
 public:
  // The standard scheme plus the four common extension letters
  // (peh, tcheh, veh, gaf).
  static const TransliterationTable& Standard();

  // Reads the TSV data file: `codepoint-hex TAB glyph TAB ascii`, `#`
  // comments. Rejects non-injective tables and glyph/codepoint mismatches.
  static TransliterationTable Load(const std::string& path);

  // Unmapped codepoints (digits, Latin, punctuation) pass through.
  std::string ToBuckwalter(const ArabicString& s) const;

  // Whitespace, ASCII digits and non-ASCII bytes pass through. Any other
  // ASCII symbol without a reverse mapping throws TransliterationError
  // carrying its byte offset.
  ArabicString FromBuckwalter(std::string_view ascii) const;

  const std::map<char32_t, char>& forward() const { return forward_; }
  const std::map<char, char32_t>& reverse() const { return reverse_; }
  std::size_t size() const { return forward_.size(); }

 private:
  void Add(char32_t cp, char symbol);

  std::map<char32_t, char> forward_;
  std::map<char, char32_t> reverse_;
};

inline std::string ToBuckwalter(const ArabicString& s) {
  return TransliterationTable::Standard().ToBuckwalter(s);
}

inline ArabicString FromBuckwalter(std::string_view ascii) {
  return TransliterationTable::Standard().FromBuckwalter(ascii);
}

}  // namespace useg

#endif  // USEG_ARABIC_TEXT_H_
