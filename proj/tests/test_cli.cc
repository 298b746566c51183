#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "test_util.h"
#include "useg/cli.h"
#include "useg/corpus.h"

using namespace useg;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = RunCli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::size_t CountLines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("cli: help and usage errors") {
  Result help = Run({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("sweep") != std::string::npos);
  CHECK(Run({}).code == kExitValidation);
  CHECK(Run({"frobnicate"}).code == kExitValidation);
  CHECK(Run({"stats", "--corpus", "x", "--bogus"}).code == kExitValidation);
  CHECK(Run({"stats"}).code == kExitValidation);
}

TEST_CASE("cli: text commands read stdin line by line") {
  Result n = Run({"normalize"}, "أحمد  في المدرسة\nعلى\n");
  CHECK(n.code == kExitOk);
  CHECK(n.out == "احمد في المدرسه\nعلي\n");

  Result t = Run({"translit"}, "مساء الخير\nشكرا\n");
  CHECK(t.out == "msA' Alxyr\n$krA\n");
  Result r = Run({"translit", "--reverse"}, "msA' Alxyr\n");
  CHECK(r.out == "مساء الخير\n");
  Result bad = Run({"translit", "--reverse"}, "ok\nmsA@\n");
  CHECK(bad.code == kExitValidation);
  CHECK(bad.err.find("line 2") != std::string::npos);

  Result w = Run({"wawanize"}, "وقال انا والحساب\n");
  CHECK(w.out == "و قال انا و الحساب\n");
}

TEST_CASE("cli: files and io errors") {
  testing::TempDir dir;
  testing::WriteFile(dir / "in.txt", "مدرسة\n");
  CHECK(Run({"normalize", "--in", dir / "in.txt", "--out", dir / "out.txt"}).code == kExitOk);
  CHECK(testing::ReadFile(dir / "out.txt") == "مدرسه\n");
  CHECK(Run({"normalize", "--in", dir / "missing.txt"}).code == kExitIo);
  CHECK(Run({"stats", "--corpus", dir / "missing.useg"}).code == kExitIo);
  CHECK(Run({"wawanize", "--lexicon", dir / "missing.txt"}, "x\n").code == kExitIo);
}

TEST_CASE("cli: stats") {
  Result s = Run({"stats", "--corpus", testing::Fixture("jana_toy.useg")});
  CHECK(s.code == kExitOk);
  CHECK(s.out.find("Total Number of Turns\t61\n") != std::string::npos);
  CHECK(s.out.find("Words per Turn\t5.0\n") != std::string::npos);
  CHECK(s.err.find("M03/T4") != std::string::npos);
  CHECK(Run({"--quiet", "stats", "--corpus", testing::Fixture("jana_toy.useg")}).err.empty());
  CHECK(Run({"stats", "--corpus", testing::Fixture("bad_first_tag.useg")}).code ==
        kExitValidation);
}

TEST_CASE("cli: split writes three files") {
  testing::TempDir dir;
  Result r = Run({"split", "--corpus", testing::Fixture("jana_toy.useg"), "--out-prefix",
                  dir / "j"});
  REQUIRE(r.code == kExitOk);
  std::size_t total = 0;
  for (const char* part : {"train", "dev", "test"}) {
    total += ComputeStats(LoadCorpus(dir / (std::string("j.") + part + ".useg"))).n_turns;
  }
  CHECK(total == 61);
  CHECK(ComputeStats(LoadCorpus(dir / "j.train.useg")).n_turns == 18 + 13 + 12);

  std::string first = testing::ReadFile(dir / "j.dev.useg");
  Run({"--seed", "3", "split", "--corpus", testing::Fixture("jana_toy.useg"), "--out-prefix",
       dir / "s", "--seeded-shuffle"});
  std::string a = testing::ReadFile(dir / "s.dev.useg");
  Run({"--seed", "3", "split", "--corpus", testing::Fixture("jana_toy.useg"), "--out-prefix",
       dir / "s", "--seeded-shuffle"});
  CHECK(testing::ReadFile(dir / "s.dev.useg") == a);
  CHECK(a != first);

  CHECK(Run({"split", "--corpus", testing::Fixture("toy.useg"), "--out-prefix", dir / "t"})
            .code == kExitValidation);
  CHECK(Run({"split", "--corpus", testing::Fixture("jana_toy.useg"), "--out-prefix",
             dir / "t", "--ratios", "0.5,0.2,0.2"})
            .code == kExitValidation);
}

TEST_CASE("cli: train, tag, eval") {
  testing::TempDir dir;
  std::string corpus = testing::Fixture("jana_toy.useg");
  Result train = Run({"train", "--corpus", corpus, "--model", dir / "m.txt", "--window",
                      "-2/+2", "--prev-tags", "3"});
  REQUIRE(train.code == kExitOk);
  Result tag = Run({"tag", "--model", dir / "m.txt", "--corpus", corpus, "--out",
                    dir / "pred.useg"});
  REQUIRE(tag.code == kExitOk);
  Result eval = Run({"eval", "--gold", corpus, "--pred", dir / "pred.useg", "--format", "json"});
  REQUIRE(eval.code == kExitOk);
  auto j = nlohmann::json::parse(eval.out);
  CHECK(j["f1"].get<double>() >= 0.95);

  Result table = Run({"eval", "--gold", corpus, "--pred", dir / "pred.useg"});
  CHECK(table.out.rfind("P", 0) == 0);
  CHECK(table.out.find("Acc") != std::string::npos);

  // same seed, same bytes
  REQUIRE(Run({"--seed", "4", "train", "--corpus", corpus, "--model", dir / "a.txt"}).code == 0);
  REQUIRE(Run({"--seed", "4", "train", "--corpus", corpus, "--model", dir / "b.txt"}).code == 0);
  CHECK(testing::ReadFile(dir / "a.txt") == testing::ReadFile(dir / "b.txt"));

  Result raw = Run({"tag", "--model", dir / "m.txt", "--raw", "-", "--emit", "utterances"},
                   "مساء الخير عايز اعرف رصيدي\n\nشكرا\n");
  CHECK(raw.code == kExitOk);
  CHECK(raw.out.find("raw/L3\tشكرا\n") != std::string::npos);
}

TEST_CASE("cli: train and tag validation") {
  testing::TempDir dir;
  std::string corpus = testing::Fixture("jana_toy.useg");
  CHECK(Run({"train", "--corpus", corpus, "--model", dir / "m", "--window", "-6/+6"}).code ==
        kExitValidation);
  CHECK(Run({"train", "--corpus", corpus, "--model", dir / "m", "--window=-2/2"}).code ==
        kExitValidation);
  CHECK(Run({"train", "--corpus", corpus, "--model", dir / "m", "--prev-tags", "9"}).code ==
        kExitValidation);
  CHECK(Run({"train", "--corpus", corpus, "--model", dir / "m", "--class-weight", "B-Seg"})
            .code == kExitValidation);
  CHECK(Run({"train", "--corpus", corpus, "--model", dir / "m", "--pos", "madamira"}).code ==
        kExitValidation);
  CHECK(Run({"train", "--corpus", corpus, "--model", dir / "m", "--c", "-1"}).code ==
        kExitValidation);
  CHECK(Run({"train", "--corpus", corpus, "--model", dir / "m", "--class-weight", "B-Seg=2",
             "--window=-1/+1", "--no-pos", "--bigrams"})
            .code == kExitOk);
  CHECK(Run({"tag", "--model", dir / "m"}).code == kExitValidation);
  CHECK(Run({"tag", "--model", dir / "m", "--corpus", corpus, "--raw", "x"}).code ==
        kExitValidation);
  CHECK(Run({"tag", "--model", dir / "nope", "--corpus", corpus}).code == kExitIo);
}

TEST_CASE("cli: eval with mismatched files names the turn") {
  testing::TempDir dir;
  std::string head = "# dialogue: D1 genre=Banks medium=IM\n# turn: T1 speaker=Customer\n";
  testing::WriteFile(dir / "gold.useg", head + "0\tالو\tAlw\t_\tB-Seg\t_\n1\tايوه\tAywh\t_\tI-Seg\t_\n");
  testing::WriteFile(dir / "pred.useg", head + "0\tالو\tAlw\t_\tB-Seg\t_\n");
  Result r = Run({"eval", "--gold", dir / "gold.useg", "--pred", dir / "pred.useg"});
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find("D1/T1") != std::string::npos);
  CHECK(Run({"eval", "--gold", testing::Fixture("table2.useg"), "--pred",
             testing::Fixture("toy.useg")})
            .code == kExitValidation);
}

TEST_CASE("cli: gold POS training") {
  testing::TempDir dir;
  Result r = Run({"train", "--corpus", testing::Fixture("toy.useg"), "--model", dir / "m",
                  "--pos", "gold", "--tagmap", testing::SourceData("tagmap.conf")});
  CHECK(r.code == kExitOk);
  CHECK(r.err.find("PREP") != std::string::npos);
}

TEST_CASE("cli: sweep covers the window grid deterministically") {
  testing::TempDir dir;
  REQUIRE(Run({"split", "--corpus", testing::Fixture("jana_toy.useg"), "--out-prefix",
               dir / "j"})
              .code == kExitOk);
  std::vector<std::string> args = {"--seed", "1", "sweep", "--corpus", dir / "j.train.useg",
                                   "--dev", dir / "j.dev.useg"};
  Result a = Run(args);
  Result b = Run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(CountLines(a.out) == 6);
  for (const char* w : {"-1/+1", "-2/+2", "-3/+3", "-4/+4", "-5/+5"}) {
    CHECK(a.out.find(std::string("\t") + w + "\t") != std::string::npos);
  }
  CHECK(std::count(a.out.begin(), a.out.end(), '*') == 1);

  Result one = Run({"sweep", "--corpus", dir / "j.train.useg", "--dev", dir / "j.dev.useg",
                    "--windows", "-2/+2"});
  CHECK(CountLines(one.out) == 2);

  testing::WriteFile(dir / "empty.useg", "");
  CHECK(Run({"sweep", "--corpus", dir / "j.train.useg", "--dev", dir / "empty.useg"}).code ==
        kExitValidation);
}
