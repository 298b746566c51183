#include "useg/arabic_text.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <fstream>
#include <sstream>

namespace useg {
namespace {

constexpr char32_t kAlif = 0x0627;
constexpr char32_t kHeh = 0x0647;
constexpr char32_t kYeh = 0x064A;

std::string Nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw std::runtime_error(std::string("ICU NFC unavailable: ") +
                             u_errorName(status));
  }
  icu::UnicodeString in = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  if (nfc->isNormalized(in, status) && U_SUCCESS(status)) {
    // fromUTF8 already replaced ill-formed sequences.
    std::string out;
    in.toUTF8String(out);
    return out;
  }
  status = U_ZERO_ERROR;
  icu::UnicodeString normalized = nfc->normalize(in, status);
  if (U_FAILURE(status)) {
    throw std::runtime_error(std::string("NFC normalization failed: ") +
                             u_errorName(status));
  }
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

char32_t UnifyLetter(char32_t cp) {
  switch (cp) {
    case 0x0622:  // alif with madda above
    case 0x0623:  // alif with hamza above
    case 0x0625:  // alif with hamza below
      return kAlif;
    case 0x0629:  // teh marbuta
      return kHeh;
    case 0x0649:  // alif maksura
      return kYeh;
    default:
      return cp;
  }
}

// Letter rules followed by whitespace folding on an NFC string.
std::string ApplyRules(std::string_view nfc) {
  std::u32string cps = DecodeUtf8(nfc);
  std::string out;
  out.reserve(nfc.size());
  bool pending_space = false;
  for (char32_t cp : cps) {
    if (IsUnicodeWhitespace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    AppendUtf8(UnifyLetter(cp), &out);
  }
  return out;
}

}  // namespace

ArabicString::ArabicString(std::string_view utf8) : text_(Nfc(utf8)) {}

std::u32string DecodeUtf8(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
  int32_t length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    out.push_back(c < 0 ? char32_t{0xFFFD} : static_cast<char32_t>(c));
  }
  return out;
}

void AppendUtf8(char32_t cp, std::string* out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string EncodeUtf8(std::u32string_view codepoints) {
  std::string out;
  out.reserve(codepoints.size() * 2);
  for (char32_t cp : codepoints) AppendUtf8(cp, &out);
  return out;
}

std::size_t CodepointCount(std::string_view utf8) {
  return DecodeUtf8(utf8).size();
}

bool IsUnicodeWhitespace(char32_t cp) {
  return u_isUWhiteSpace(static_cast<UChar32>(cp));
}

bool IsArabicScript(char32_t cp) {
  return (cp >= 0x0600 && cp <= 0x06FF) || (cp >= 0x0750 && cp <= 0x077F) ||
         (cp >= 0x08A0 && cp <= 0x08FF) || (cp >= 0xFB50 && cp <= 0xFDFF) ||
         (cp >= 0xFE70 && cp <= 0xFEFF);
}

ArabicString Normalize(const ArabicString& s) {
  // Unifying an alif can expose a new NFC composition (alif followed by a
  // combining hamza or madda), so iterate to a fixed point. Each pass that
  // changes anything removes at least one combining mark.
  std::string current = ApplyRules(s.str());
  for (;;) {
    std::string recomposed = Nfc(current);
    if (recomposed == current) break;
    current = ApplyRules(recomposed);
  }
  return ArabicString(current);
}

std::vector<std::string> SplitWhitespace(std::string_view utf8) {
  std::vector<std::string> out;
  std::string word;
  for (char32_t cp : DecodeUtf8(utf8)) {
    if (IsUnicodeWhitespace(cp)) {
      if (!word.empty()) out.push_back(std::move(word));
      word.clear();
    } else {
      AppendUtf8(cp, &word);
    }
  }
  if (!word.empty()) out.push_back(std::move(word));
  return out;
}

TransliterationError::TransliterationError(std::size_t position, char symbol)
    : ValidationError("no Buckwalter mapping for '" + std::string(1, symbol) +
                      "' at position " + std::to_string(position)),
      position_(position),
      symbol_(symbol) {}

void TransliterationTable::Add(char32_t cp, char symbol) {
  if (forward_.count(cp) || reverse_.count(symbol)) {
    throw ValidationError("transliteration table is not one-to-one at '" +
                          std::string(1, symbol) + "'");
  }
  if (static_cast<unsigned char>(symbol) >= 0x80 || symbol <= ' ' ||
      (symbol >= '0' && symbol <= '9')) {
    throw ValidationError("Buckwalter symbol must be printable non-digit ASCII");
  }
  forward_.emplace(cp, symbol);
  reverse_.emplace(symbol, cp);
}

const TransliterationTable& TransliterationTable::Standard() {
  static const TransliterationTable table = [] {
    TransliterationTable t;
    static constexpr std::pair<char32_t, char> kRows[] = {
        {0x0621, '\''}, {0x0622, '|'}, {0x0623, '>'}, {0x0624, '&'},
        {0x0625, '<'},  {0x0626, '}'}, {0x0627, 'A'}, {0x0628, 'b'},
        {0x0629, 'p'},  {0x062A, 't'}, {0x062B, 'v'}, {0x062C, 'j'},
        {0x062D, 'H'},  {0x062E, 'x'}, {0x062F, 'd'}, {0x0630, '*'},
        {0x0631, 'r'},  {0x0632, 'z'}, {0x0633, 's'}, {0x0634, '$'},
        {0x0635, 'S'},  {0x0636, 'D'}, {0x0637, 'T'}, {0x0638, 'Z'},
        {0x0639, 'E'},  {0x063A, 'g'}, {0x0640, '_'}, {0x0641, 'f'},
        {0x0642, 'q'},  {0x0643, 'k'}, {0x0644, 'l'}, {0x0645, 'm'},
        {0x0646, 'n'},  {0x0647, 'h'}, {0x0648, 'w'}, {0x0649, 'Y'},
        {0x064A, 'y'},  {0x064B, 'F'}, {0x064C, 'N'}, {0x064D, 'K'},
        {0x064E, 'a'},  {0x064F, 'u'}, {0x0650, 'i'}, {0x0651, '~'},
        {0x0652, 'o'},  {0x0670, '`'}, {0x0671, '{'}, {0x067E, 'P'},
        {0x0686, 'J'},  {0x06A4, 'V'}, {0x06AF, 'G'},
    };
    for (const auto& [cp, symbol] : kRows) t.Add(cp, symbol);
    return t;
  }();
  return table;
}

TransliterationTable TransliterationTable::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open transliteration table " + path);
  TransliterationTable t;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::istringstream fields(line);
    for (std::string col; std::getline(fields, col, '\t');) cols.push_back(col);
    auto fail = [&](const std::string& why) {
      throw ValidationError(path + ":" + std::to_string(line_no) + ": " + why);
    };
    if (cols.size() != 3) fail("expected 3 tab-separated columns");
    char32_t cp = 0;
    try {
      std::size_t used = 0;
      cp = static_cast<char32_t>(std::stoul(cols[0], &used, 16));
      if (used != cols[0].size()) fail("bad codepoint '" + cols[0] + "'");
    } catch (const std::logic_error&) {
      fail("bad codepoint '" + cols[0] + "'");
    }
    std::u32string glyph = DecodeUtf8(cols[1]);
    if (glyph.size() != 1 || glyph[0] != cp) {
      fail("glyph does not match codepoint " + cols[0]);
    }
    if (cols[2].size() != 1) fail("Buckwalter symbol must be one character");
    try {
      t.Add(cp, cols[2][0]);
    } catch (const ValidationError& e) {
      fail(e.what());
    }
  }
  return t;
}

std::string TransliterationTable::ToBuckwalter(const ArabicString& s) const {
  std::string out;
  out.reserve(s.str().size());
  for (char32_t cp : DecodeUtf8(s.str())) {
    auto it = forward_.find(cp);
    if (it != forward_.end()) {
      out.push_back(it->second);
    } else {
      AppendUtf8(cp, &out);
    }
  }
  return out;
}

ArabicString TransliterationTable::FromBuckwalter(std::string_view ascii) const {
  std::string out;
  out.reserve(ascii.size() * 2);
  for (std::size_t i = 0; i < ascii.size(); ++i) {
    char c = ascii[i];
    auto byte = static_cast<unsigned char>(c);
    if (byte >= 0x80 || (c >= '0' && c <= '9') || c == ' ' || c == '\t' ||
        c == '\n' || c == '\r') {
      out.push_back(c);
      continue;
    }
    auto it = reverse_.find(c);
    if (it == reverse_.end()) throw TransliterationError(i, c);
    AppendUtf8(it->second, &out);
  }
  return ArabicString(out);
}

}  // namespace useg
