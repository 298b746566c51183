#include "useg/features.h"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "useg/error.h"

namespace useg {
namespace {

constexpr std::string_view kPad = "<PAD>";
constexpr std::string_view kBos = "<BOS>";

std::string Offset(int o) {
  if (o > 0) return "+" + std::to_string(o);
  return std::to_string(o);
}

std::optional<int> ParseInt(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

void CheckSequence(const TokenSequence& seq, std::span<const SegTag> prev_tags,
                   std::size_t position, const FeatureTemplate& tmpl) {
  if (position >= seq.words.size()) {
    throw std::out_of_range("feature position " + std::to_string(position) +
                            " out of range for " +
                            std::to_string(seq.words.size()) + " tokens");
  }
  if (tmpl.use_pos && seq.pos.size() != seq.words.size()) {
    throw ValidationError("POS sequence not aligned with tokens");
  }
  if (prev_tags.size() < position) {
    throw ValidationError("tag history shorter than the current position");
  }
}

}  // namespace

void FeatureTemplate::Validate() const {
  auto in_window = [](int w) { return w >= kMinWindow && w <= kMaxWindow; };
  if (!in_window(window_before) || !in_window(window_after)) {
    throw ValidationError("window " + FormatWindow(window_before, window_after) +
                          " outside -1/+1 .. -5/+5");
  }
  if (n_prev_tags < 0 || n_prev_tags > kMaxPrevTags) {
    throw ValidationError("previous-tag count must be in 0..5, got " +
                          std::to_string(n_prev_tags));
  }
}

std::string FeatureTemplate::Serialize() const {
  std::ostringstream out;
  out << FormatWindow(window_before, window_after) << " prev_tags=" << n_prev_tags
      << " pos=" << (use_pos ? 1 : 0) << " bigrams=" << (bigrams ? 1 : 0)
      << " pos_offsets=" << (pos_all_offsets ? "all" : "center");
  return out.str();
}

FeatureTemplate FeatureTemplate::Parse(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string window;
  if (!(in >> window)) throw ValidationError("empty feature template");
  FeatureTemplate t;
  std::tie(t.window_before, t.window_after) = ParseWindow(window);
  for (std::string kv; in >> kv;) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ValidationError("bad template field '" + kv + "'");
    std::string key = kv.substr(0, eq);
    std::string value = kv.substr(eq + 1);
    auto flag = [&]() {
      if (value != "0" && value != "1") {
        throw ValidationError("template field " + key + " must be 0 or 1");
      }
      return value == "1";
    };
    if (key == "prev_tags") {
      auto n = ParseInt(value);
      if (!n) throw ValidationError("bad prev_tags '" + value + "'");
      t.n_prev_tags = *n;
    } else if (key == "pos") {
      t.use_pos = flag();
    } else if (key == "bigrams") {
      t.bigrams = flag();
    } else if (key == "pos_offsets") {
      if (value != "all" && value != "center") {
        throw ValidationError("pos_offsets must be all or center");
      }
      t.pos_all_offsets = value == "all";
    } else {
      throw ValidationError("unknown template field '" + key + "'");
    }
  }
  t.Validate();
  return t;
}

std::pair<int, int> ParseWindow(std::string_view spec) {
  auto fail = [&]() -> std::pair<int, int> {
    throw ValidationError("window must look like -B/+A, got '" + std::string(spec) + "'");
  };
  auto slash = spec.find('/');
  if (slash == std::string_view::npos) return fail();
  std::string_view before = spec.substr(0, slash);
  std::string_view after = spec.substr(slash + 1);
  if (before.size() < 2 || before[0] != '-' || after.size() < 2 || after[0] != '+') {
    return fail();
  }
  auto b = ParseInt(before.substr(1));
  auto a = ParseInt(after.substr(1));
  if (!b || !a) return fail();
  return {*b, *a};
}

std::string FormatWindow(int before, int after) {
  return "-" + std::to_string(before) + "/+" + std::to_string(after);
}

std::optional<std::uint32_t> Alphabet::Find(std::string_view feature) const {
  auto it = index_.find(std::string(feature));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Alphabet::Add(std::string_view feature) {
  if (auto found = Find(feature)) return *found;
  if (frozen_) throw std::logic_error("alphabet is frozen");
  if (feature.find_first_of("\t\n\r") != std::string_view::npos) {
    throw ValidationError("feature string contains a tab or newline");
  }
  auto index = static_cast<std::uint32_t>(features_.size());
  features_.emplace_back(feature);
  index_.emplace(features_.back(), index);
  return index;
}

FeatureVector MakeFeatureVector(std::vector<std::uint32_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return FeatureVector{std::move(indices)};
}

std::vector<std::string> FeatureStrings(const TokenSequence& seq,
                                        std::span<const SegTag> prev_tags,
                                        std::size_t position,
                                        const FeatureTemplate& tmpl) {
  CheckSequence(seq, prev_tags, position, tmpl);
  const auto n = static_cast<long>(seq.words.size());
  const auto pos = static_cast<long>(position);
  auto word_at = [&](int o) -> std::string_view {
    long i = pos + o;
    return (i < 0 || i >= n) ? kPad : std::string_view(seq.words[i]);
  };

  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(tmpl.window_before + tmpl.window_after) * 3 +
              static_cast<std::size_t>(tmpl.n_prev_tags) + 1);
  for (int o = -tmpl.window_before; o <= tmpl.window_after; ++o) {
    out.push_back("W[" + Offset(o) + "]=" + std::string(word_at(o)));
  }
  if (tmpl.bigrams) {
    for (int o = -tmpl.window_before; o < tmpl.window_after; ++o) {
      out.push_back("W[" + Offset(o) + "," + Offset(o + 1) + "]=" +
                    std::string(word_at(o)) + "/" + std::string(word_at(o + 1)));
    }
  }
  if (tmpl.use_pos) {
    int lo = tmpl.pos_all_offsets ? -tmpl.window_before : 0;
    int hi = tmpl.pos_all_offsets ? tmpl.window_after : 0;
    for (int o = lo; o <= hi; ++o) {
      long i = pos + o;
      if (i < 0 || i >= n) continue;
      const PosInfo& info = seq.pos[i];
      if (info.is_conjunction) out.push_back("CONJ[" + Offset(o) + "]");
      if (info.is_noun) out.push_back("NOUN[" + Offset(o) + "]");
      if (info.is_proper_noun) out.push_back("PROPN[" + Offset(o) + "]");
    }
  }
  for (int k = 1; k <= tmpl.n_prev_tags; ++k) {
    long i = pos - k;
    std::string_view tag = i < 0 ? kBos : ToString(prev_tags[i]);
    out.push_back("T[-" + std::to_string(k) + "]=" + std::string(tag));
  }
  return out;
}

FeatureVector Extract(const TokenSequence& seq, std::span<const SegTag> prev_tags,
                      std::size_t position, const FeatureTemplate& tmpl,
                      const Alphabet& alphabet) {
  std::vector<std::uint32_t> indices;
  for (const auto& f : FeatureStrings(seq, prev_tags, position, tmpl)) {
    if (auto index = alphabet.Find(f)) indices.push_back(*index);
  }
  return MakeFeatureVector(std::move(indices));
}

FeatureVector Extract(const TokenSequence& seq, std::span<const SegTag> prev_tags,
                      std::size_t position, const FeatureTemplate& tmpl,
                      Alphabet* alphabet) {
  if (alphabet->frozen()) {
    return Extract(seq, prev_tags, position, tmpl, std::as_const(*alphabet));
  }
  std::vector<std::uint32_t> indices;
  for (const auto& f : FeatureStrings(seq, prev_tags, position, tmpl)) {
    indices.push_back(alphabet->Add(f));
  }
  return MakeFeatureVector(std::move(indices));
}

Alphabet BuildAlphabet(std::span<const LabeledSequence> sequences,
                       const FeatureTemplate& tmpl) {
  tmpl.Validate();
  Alphabet alphabet;
  for (const auto& seq : sequences) {
    if (seq.tags.size() != seq.tokens.words.size()) {
      throw ValidationError("gold tags not aligned with tokens");
    }
    for (std::size_t i = 0; i < seq.tokens.words.size(); ++i) {
      for (const auto& f : FeatureStrings(seq.tokens, seq.tags, i, tmpl)) {
        alphabet.Add(f);
      }
    }
  }
  alphabet.Freeze();
  return alphabet;
}

}  // namespace useg
