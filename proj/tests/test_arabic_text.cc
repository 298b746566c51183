#include <doctest.h>

#include <random>

#include "oracles/text_oracle.h"
#include "test_util.h"
#include "useg/arabic_text.h"

using namespace useg;

namespace {
std::string N(const std::string& s) { return Normalize(ArabicString(s)).str(); }
}  // namespace

TEST_CASE("normalize folds alif variants, teh marbuta and alif maksura") {
  CHECK(N("أحمد") == "احمد");
  CHECK(N("إسلام") == "اسلام");
  CHECK(N("آخر") == "اخر");
  CHECK(N("مدرسة") == "مدرسه");
  CHECK(N("على") == "علي");
  CHECK(N("شريفة المصري") == "شريفه المصري");
}

TEST_CASE("normalize collapses and trims whitespace") {
  CHECK(N("  مساء\t\tالخير \n") == "مساء الخير");
  CHECK(N(" 　") == "");
  CHECK(N("") == "");
}

TEST_CASE("normalize keeps diacritics and catches composed alif") {
  CHECK(N("مَدْرَسَة") == "مَدْرَسَه");
  // alif + combining hamza above composes to U+0623 under NFC
  CHECK(N("أ") == "ا");
  CHECK(N("آ") == "ا");
  CHECK(N("إ") == "ا");
  CHECK(N("ئ") == "ئ");
}

TEST_CASE("normalize is idempotent on fuzzed input") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    std::string s = oracle::ToUtf8(oracle::RandomMixed(rng, 24));
    std::string once = N(s);
    REQUIRE(N(once) == once);
    for (char32_t cp : DecodeUtf8(once)) {
      REQUIRE(cp != 0x0622);
      REQUIRE(cp != 0x0623);
      REQUIRE(cp != 0x0625);
      REQUIRE(cp != 0x0629);
      REQUIRE(cp != 0x0649);
    }
  }
}

TEST_CASE("normalize agrees with the reference on letters and whitespace") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    std::u32string s = oracle::RandomLettersAndSpace(rng, 20);
    REQUIRE(N(oracle::ToUtf8(s)) == oracle::ReferenceNormalize(s));
  }
}

TEST_CASE("ArabicString holds NFC") {
  CHECK(ArabicString("أ").str() == "أ");
  CHECK(ArabicString("أ") == ArabicString("أ"));
}

TEST_CASE("utf8 helpers") {
  CHECK(DecodeUtf8("اب") == U"اب");
  CHECK(DecodeUtf8("\xff") == U"�");
  CHECK(EncodeUtf8(U"شكرا") == "شكرا");
  CHECK(CodepointCount("مساء") == 4);
  CHECK(IsArabicScript(0x0645));
  CHECK(IsArabicScript(0xFEFB));
  CHECK_FALSE(IsArabicScript(U'a'));
  CHECK(IsUnicodeWhitespace(0x00A0));
  CHECK_FALSE(IsUnicodeWhitespace(0x0627));
  CHECK(SplitWhitespace(" a b  c ") == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("buckwalter on sample phrases") {
  CHECK(ToBuckwalter(ArabicString("مساء الخير")) == "msA' Alxyr");
  CHECK(ToBuckwalter(ArabicString("شكرا")) == "$krA");
  CHECK(FromBuckwalter("msA' Alxyr").str() == "مساء الخير");
  CHECK(FromBuckwalter("$krA").str() == "شكرا");
  CHECK(ToBuckwalter(ArabicString("قروض السيارات")) == "qrwD AlsyArAt");
  CHECK(ToBuckwalter(ArabicString("مدرسة")) == "mdrsp");
  CHECK(ToBuckwalter(ArabicString("على")) == "ElY");
}

TEST_CASE("buckwalter extension letters and passthrough") {
  CHECK(ToBuckwalter(ArabicString("پچڤگ")) == "PJVG");
  CHECK(FromBuckwalter("PJVG").str() == "پچڤگ");
  CHECK(ToBuckwalter(ArabicString("رقم 123 ok")) == "rqm 123 ok");
  CHECK(FromBuckwalter("rqm 123").str() == "رقم 123");
  CHECK(FromBuckwalter("\t").str() == "\t");
}

TEST_CASE("buckwalter reverse rejects unmapped symbols with their offset") {
  try {
    FromBuckwalter("ktb@");
    FAIL("expected TransliterationError");
  } catch (const TransliterationError& e) {
    CHECK(e.position() == 3);
    CHECK(e.symbol() == '@');
  }
  CHECK_THROWS_AS(FromBuckwalter("#"), ValidationError);
}

TEST_CASE("buckwalter round trip on normalized fuzz") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    ArabicString s = Normalize(ArabicString(oracle::ToUtf8(oracle::RandomMixed(rng, 16, false))));
    REQUIRE(FromBuckwalter(ToBuckwalter(s)) == s);
  }
}

TEST_CASE("buckwalter table file matches the built-in table") {
  TransliterationTable file = TransliterationTable::Load(testing::SourceData("buckwalter.tsv"));
  const auto& standard = TransliterationTable::Standard();
  CHECK(file.size() == standard.size());
  CHECK(file.forward() == standard.forward());
  CHECK(file.reverse() == standard.reverse());
}

TEST_CASE("buckwalter table loader rejects bad files") {
  testing::TempDir dir;
  testing::WriteFile(dir / "dup.tsv", "0627\tا\tA\n0628\tب\tA\n");
  CHECK_THROWS_AS(TransliterationTable::Load(dir / "dup.tsv"), ValidationError);
  testing::WriteFile(dir / "glyph.tsv", "0627\tب\tA\n");
  CHECK_THROWS_AS(TransliterationTable::Load(dir / "glyph.tsv"), ValidationError);
  CHECK_THROWS_AS(TransliterationTable::Load(dir / "missing.tsv"), IoError);
}
