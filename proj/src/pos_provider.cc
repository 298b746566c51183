#include "useg/pos_provider.h"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "useg/error.h"

namespace useg {
namespace {

std::string Upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::string Trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::set<std::string> LoadWordList(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open word list " + path);
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    ArabicString word = Normalize(ArabicString(line));
    if (word.empty() || word.str()[0] == '#') continue;
    words.insert(word.str());
  }
  return words;
}

LexiconPosProvider::LexiconPosProvider(std::set<std::string> conjunctions,
                                       std::set<std::string> nouns,
                                       std::set<std::string> proper_nouns)
    : conjunctions_(std::move(conjunctions)),
      nouns_(std::move(nouns)),
      proper_nouns_(std::move(proper_nouns)) {}

LexiconPosProvider LexiconPosProvider::FromDirectory(const std::string& dir) {
  namespace fs = std::filesystem;
  auto optional_list = [&](const char* name) {
    fs::path p = fs::path(dir) / name;
    return fs::exists(p) ? LoadWordList(p.string()) : std::set<std::string>{};
  };
  return LexiconPosProvider(
      LoadWordList((fs::path(dir) / "conjunctions.txt").string()),
      optional_list("nouns.txt"), optional_list("proper_nouns.txt"));
}

PosInfo LexiconPosProvider::TagWord(const ArabicString& word) const {
  PosInfo info;
  info.is_conjunction = conjunctions_.count(word.str()) > 0;
  info.is_noun = nouns_.count(word.str()) > 0;
  info.is_proper_noun = proper_nouns_.count(word.str()) > 0;
  if (info.is_conjunction) {
    info.tag = "CONJ";
  } else if (info.is_proper_noun) {
    info.tag = "NOUN_PROP";
  } else if (info.is_noun) {
    info.tag = "NOUN";
  }
  return info;
}

std::vector<PosInfo> LexiconPosProvider::TagTokens(
    const std::vector<ArabicString>& tokens) const {
  std::vector<PosInfo> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) out.push_back(TagWord(token));
  return out;
}

void TagMapping::Add(std::string prefix, Flag flag) {
  prefixes_[Upper(std::move(prefix))] = flag;
}

TagMapping TagMapping::Parse(const std::string& text,
                             const std::string& source) {
  TagMapping mapping;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto fail = [&](const std::string& why) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": " +
                            why);
    };
    auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected PREFIX=conj|noun|propn");
    std::string prefix = Trim(line.substr(0, eq));
    std::string kind = Trim(line.substr(eq + 1));
    if (prefix.empty()) fail("empty tag prefix");
    if (kind == "conj") {
      mapping.Add(prefix, Flag::kConjunction);
    } else if (kind == "noun") {
      mapping.Add(prefix, Flag::kNoun);
    } else if (kind == "propn") {
      mapping.Add(prefix, Flag::kProperNoun);
    } else {
      fail("unknown flag '" + kind + "'");
    }
  }
  return mapping;
}

TagMapping TagMapping::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open tag mapping " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str(), path);
}

PosInfo TagMapping::Map(const std::string& raw_tag,
                        std::set<std::string>* unmapped) const {
  PosInfo info;
  if (raw_tag.empty() || raw_tag == "_") return info;
  info.tag = raw_tag;
  std::string upper = Upper(raw_tag);
  const Flag* best = nullptr;
  std::size_t best_len = 0;
  for (const auto& [prefix, flag] : prefixes_) {
    if (prefix.size() >= best_len && upper.starts_with(prefix)) {
      best = &flag;
      best_len = prefix.size();
    }
  }
  if (best == nullptr) {
    if (unmapped) unmapped->insert(raw_tag);
    return info;
  }
  switch (*best) {
    case Flag::kConjunction:
      info.is_conjunction = true;
      break;
    case Flag::kNoun:
      info.is_noun = true;
      break;
    case Flag::kProperNoun:
      info.is_proper_noun = true;
      break;
  }
  return info;
}

std::vector<PosInfo> TagMapping::MapAll(const std::vector<std::string>& raw_tags,
                                        std::set<std::string>* unmapped) const {
  std::vector<PosInfo> out;
  out.reserve(raw_tags.size());
  for (const auto& tag : raw_tags) out.push_back(Map(tag, unmapped));
  return out;
}

}  // namespace useg
