#include "useg/wawanizer.h"

#include <algorithm>
#include <fstream>

namespace useg {
namespace {

constexpr std::size_t kMinSplitLength = 3;

bool AllArabicScript(const std::u32string& cps) {
  return !cps.empty() && std::all_of(cps.begin(), cps.end(), IsArabicScript);
}

}  // namespace

bool WawLexicon::Insert(const ArabicString& word) {
  ArabicString normalized = Normalize(word);
  if (normalized.empty() || normalized == Waw()) return false;
  return words_.insert(normalized.str()).second;
}

WawLexicon WawLexicon::Load(const std::string& path,
                            std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon " + path);
  WawLexicon lexicon(path);
  std::string line;
  int line_no = 0;
  auto warn = [&](const std::string& msg) {
    if (warnings) {
      warnings->push_back(path + ":" + std::to_string(line_no) + ": " + msg);
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    ArabicString word = Normalize(ArabicString(line));
    if (word.empty() || word.str()[0] == '#') continue;
    if (!AllArabicScript(DecodeUtf8(word.str()))) {
      warn("skipping non-Arabic entry '" + word.str() + "'");
      continue;
    }
    if (word == Waw()) {
      warn("skipping bare conjunction");
      continue;
    }
    lexicon.Insert(word);
  }
  if (in.bad()) throw IoError("error reading lexicon " + path);
  return lexicon;
}

std::vector<ArabicString> SplitWaw(const ArabicString& token,
                                   const WawLexicon& lexicon) {
  const std::string& waw = Waw().str();
  const std::string& text = token.str();
  if (text.size() <= waw.size() || text.compare(0, waw.size(), waw) != 0 ||
      CodepointCount(text) < kMinSplitLength || lexicon.Contains(token)) {
    return {token};
  }
  ArabicString rest(std::string_view(text).substr(waw.size()));
  if (!lexicon.Contains(rest)) return {token};
  return {Waw(), rest};
}

std::vector<ArabicString> WawanizeTurn(const std::vector<ArabicString>& tokens,
                                       const WawLexicon& lexicon) {
  std::vector<ArabicString> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    for (auto& piece : SplitWaw(token, lexicon)) out.push_back(std::move(piece));
  }
  return out;
}

}  // namespace useg
