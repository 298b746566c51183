#include <doctest.h>

#include <algorithm>

#include "test_util.h"
#include "useg/error.h"
#include "useg/features.h"
#include "useg/segmenter.h"

using namespace useg;

namespace {

constexpr SegTag B = SegTag::kBSeg;
constexpr SegTag I = SegTag::kISeg;

bool Has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

TokenSequence Seq(std::vector<std::string> words) {
  TokenSequence s;
  s.pos.resize(words.size());
  s.words = std::move(words);
  return s;
}

}  // namespace

TEST_CASE("worked example: features at the detached conjunction") {
  WawLexicon lexicon = WawLexicon::Load(testing::SourceData("waw_lexicon.txt"));
  auto tokens = Preprocess("عايز اعرف ازاي افتح حساب و ايه الاجراءات اللازمه لعمل ده", lexicon);
  auto pos = LexiconPosProvider::FromDirectory(USEG_SOURCE_DATA_DIR);
  std::vector<ArabicString> surfaces;
  for (const auto& t : tokens) surfaces.push_back(t.surface);
  TokenSequence seq = MakeSequence(tokens, pos.TagTokens(surfaces));
  REQUIRE(seq.words.size() == 11);
  REQUIRE(seq.words[5] == "w");

  std::vector<SegTag> history = {B, I, I, I, I};
  auto f = FeatureStrings(seq, history, 5, FeatureTemplate{});
  CHECK(Has(f, "W[0]=w"));
  CHECK(Has(f, "CONJ[0]"));
  CHECK(Has(f, "W[-2]=AftH"));
  CHECK(Has(f, "W[-1]=HsAb"));
  CHECK(Has(f, "W[+1]=Ayh"));
  CHECK(Has(f, "W[+2]=AlAjrA'At"));
  CHECK(Has(f, "NOUN[-1]"));
  CHECK(Has(f, "T[-1]=I-Seg"));
  CHECK(Has(f, "T[-3]=I-Seg"));
  CHECK_FALSE(Has(f, "T[-4]=I-Seg"));
}

TEST_CASE("emission order and padding") {
  TokenSequence seq = Seq({"a", "b", "c"});
  seq.pos[0].is_conjunction = true;
  seq.pos[1].is_proper_noun = true;
  std::vector<SegTag> history = {B};
  FeatureTemplate t;
  t.window_before = 2;
  t.window_after = 1;
  t.n_prev_tags = 2;
  t.bigrams = true;
  auto f = FeatureStrings(seq, history, 1, t);
  std::vector<std::string> expected = {
      "W[-2]=<PAD>", "W[-1]=a", "W[0]=b", "W[+1]=c",
      "W[-2,-1]=<PAD>/a", "W[-1,0]=a/b", "W[0,+1]=b/c",
      "CONJ[-1]", "PROPN[0]",
      "T[-1]=B-Seg", "T[-2]=<BOS>"};
  CHECK(f == expected);

  t.pos_all_offsets = false;
  t.bigrams = false;
  f = FeatureStrings(seq, history, 1, t);
  CHECK_FALSE(Has(f, "CONJ[-1]"));
  CHECK(Has(f, "PROPN[0]"));

  t.use_pos = false;
  f = FeatureStrings(seq, history, 1, t);
  CHECK_FALSE(Has(f, "PROPN[0]"));
}

TEST_CASE("first position sees only BOS history") {
  auto f = FeatureStrings(Seq({"x"}), {}, 0, FeatureTemplate{});
  CHECK(Has(f, "T[-1]=<BOS>"));
  CHECK(Has(f, "T[-3]=<BOS>"));
  CHECK(Has(f, "W[+2]=<PAD>"));
}

TEST_CASE("history shorter than the position is rejected") {
  CHECK_THROWS(FeatureStrings(Seq({"a", "b", "c"}), std::vector<SegTag>{B}, 2, FeatureTemplate{}));
  CHECK_THROWS(FeatureStrings(Seq({"a"}), {}, 1, FeatureTemplate{}));
}

TEST_CASE("template validation, parse and serialize") {
  FeatureTemplate t;
  CHECK(t.Serialize() == "-2/+2 prev_tags=3 pos=1 bigrams=0 pos_offsets=all");
  CHECK(FeatureTemplate::Parse(t.Serialize()) == t);
  t.window_before = 5;
  t.window_after = 1;
  t.n_prev_tags = 0;
  t.use_pos = false;
  t.bigrams = true;
  t.pos_all_offsets = false;
  CHECK(FeatureTemplate::Parse(t.Serialize()) == t);

  FeatureTemplate bad;
  bad.window_before = 6;
  CHECK_THROWS_AS(bad.Validate(), ValidationError);
  bad = {};
  bad.window_after = 0;
  CHECK_THROWS_AS(bad.Validate(), ValidationError);
  bad = {};
  bad.n_prev_tags = 6;
  CHECK_THROWS_AS(bad.Validate(), ValidationError);
  CHECK_THROWS_AS(FeatureTemplate::Parse("-2/+2 prev_tags=x"), ValidationError);
}

TEST_CASE("window syntax") {
  CHECK(ParseWindow("-2/+2") == std::pair{2, 2});
  CHECK(ParseWindow("-5/+1") == std::pair{5, 1});
  CHECK(FormatWindow(3, 4) == "-3/+4");
  for (const char* bad : {"2/2", "-2/2", "-2+2", "", "-a/+1", "-2/+2x"}) {
    CHECK_THROWS_AS(ParseWindow(bad), ValidationError);
  }
}

TEST_CASE("alphabet") {
  Alphabet a;
  CHECK(a.Add("x") == 0);
  CHECK(a.Add("y") == 1);
  CHECK(a.Add("x") == 0);
  CHECK(a.Find("y") == 1u);
  CHECK_FALSE(a.Find("z"));
  CHECK_THROWS_AS(a.Add("tab\there"), ValidationError);
  a.Freeze();
  CHECK_THROWS_AS(a.Add("z"), std::logic_error);
  CHECK(a.Add("y") == 1);
  CHECK(a.size() == 2);
  CHECK(a.feature(1) == "y");
}

TEST_CASE("extraction drops unknown features once frozen") {
  TokenSequence seq = Seq({"a", "b"});
  Alphabet a;
  FeatureTemplate t;
  t.window_before = t.window_after = 1;
  t.n_prev_tags = 1;
  FeatureVector grown = Extract(seq, std::vector<SegTag>{B}, 1, t, &a);
  CHECK(grown.indices.size() == 4);
  CHECK(std::is_sorted(grown.indices.begin(), grown.indices.end()));
  a.Freeze();
  TokenSequence other = Seq({"a", "q"});
  FeatureVector fv = Extract(other, std::vector<SegTag>{B}, 1, t, std::as_const(a));
  CHECK(fv.indices.size() == 3);  // W[-1]=a, W[+1]=<PAD> and T[-1]=B-Seg survive
  CHECK(MakeFeatureVector({3, 1, 3}).indices == std::vector<std::uint32_t>{1, 3});
}

TEST_CASE("alphabet sizes on the dialogue fixture") {
  // recounted by tests/oracles/count_features.py
  auto turns = FlattenTurns(LoadCorpus(testing::Fixture("jana_toy.useg")));
  TurnPosSource pos = TurnPosSource::FromProvider(std::make_shared<LexiconPosProvider>(
      LexiconPosProvider::FromDirectory(USEG_SOURCE_DATA_DIR)));
  auto seqs = MakeTrainingSequences(turns, pos);
  auto size = [&](int w, int prev, bool use_pos = true, bool bigrams = false,
                  bool all = true) {
    FeatureTemplate t;
    t.window_before = t.window_after = w;
    t.n_prev_tags = prev;
    t.use_pos = use_pos;
    t.bigrams = bigrams;
    t.pos_all_offsets = all;
    return BuildAlphabet(seqs, t).size();
  };
  CHECK(size(1, 3) == 495);
  CHECK(size(2, 3) == 750);
  CHECK(size(3, 3) == 952);
  CHECK(size(4, 3) == 1108);
  CHECK(size(5, 3) == 1221);
  CHECK(size(2, 3, false) == 735);
  CHECK(size(2, 3, true, true) == 1678);
  CHECK(size(2, 0, true, false, false) == 729);
}
