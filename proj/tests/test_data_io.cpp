#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <fstream>

#include "esn/data_io.hpp"
#include "esn/errors.hpp"
#include "oracles.hpp"

using namespace esn;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("esn_test_" + std::to_string(RandomStream(std::random_device{}()).next_u64()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

void write_text(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("load_utterance: zeros, schema errors, bad cells") {
  TempDir dir;

  SUBCASE("two frames of zeros parse to a 2x23 zero matrix") {
    std::string row;
    for (std::size_t c = 0; c < kNumChannels; ++c) row += c ? ",0" : "0";
    write_text(dir.path / "u1.csv", row + "\n" + row + "\n");
    UtteranceSeries s = load_utterance(dir.path / "u1.csv");
    CHECK(s.id == "u1");
    REQUIRE(s.values.rows() == 2);
    REQUIRE(s.values.cols() == kNumChannels);
    for (std::size_t i = 0; i < s.values.size(); ++i) CHECK(s.values.data()[i] == 0.0);
  }

  SUBCASE("22 columns is a schema error naming 23") {
    std::string row = "0";
    for (int c = 1; c < 22; ++c) row += ",0";
    write_text(dir.path / "bad.csv", row + "\n");
    CHECK_THROWS_WITH_AS(load_utterance(dir.path / "bad.csv"), doctest::Contains("23"),
                         EsnError);
  }

  SUBCASE("empty file is rejected") {
    write_text(dir.path / "empty.csv", "");
    CHECK_THROWS_WITH_AS(load_utterance(dir.path / "empty.csv"),
                         doctest::Contains("empty"), EsnError);
  }

  SUBCASE("a non-numeric cell is reported with row and column") {
    std::string row = "0";
    for (int c = 1; c < 23; ++c) row += ",0";
    std::string bad = "0,abc";
    for (int c = 2; c < 23; ++c) bad += ",0";
    write_text(dir.path / "cell.csv", row + "\n" + bad + "\n");
    CHECK_THROWS_WITH_AS(load_utterance(dir.path / "cell.csv"),
                         doctest::Contains("row 2"), EsnError);
  }

  SUBCASE("missing file is reported by path") {
    CHECK_THROWS_WITH_AS(load_utterance(dir.path / "nope.csv"), doctest::Contains("nope"),
                         EsnError);
  }

  SUBCASE("non-finite cells are rejected") {
    std::string bad = "inf";
    for (int c = 1; c < 23; ++c) bad += ",0";
    write_text(dir.path / "inf.csv", bad + "\n");
    CHECK_THROWS_WITH_AS(load_utterance(dir.path / "inf.csv"),
                         doctest::Contains("not finite"), EsnError);
  }
}

TEST_CASE("write_utterance / load_utterance round-trips bit-exactly") {
  TempDir dir;
  UtteranceSeries s;
  s.id = "rt";
  s.values = oracle::random_matrix(17, kNumChannels, 61, -5.0, 5.0);
  // throw in values that stress decimal formatting
  s.values(0, 0) = 0.1;
  s.values(0, 1) = 1.0 / 3.0;
  s.values(0, 2) = 1e-300;
  s.values(0, 3) = -12345678.9012345678;

  write_utterance(dir.path / "rt.csv", s);
  UtteranceSeries back = load_utterance(dir.path / "rt.csv");
  REQUIRE(back.values.rows() == s.values.rows());
  CHECK(std::memcmp(back.values.data(), s.values.data(),
                    s.values.size() * sizeof(double)) == 0);
}

TEST_CASE("load_labels: header, parsing, duplicates") {
  TempDir dir;

  SUBCASE("valid header with empty body gives an empty list") {
    write_text(dir.path / "labels.csv", "id,arousal,valence\n");
    CHECK(load_labels(dir.path / "labels.csv").empty());
  }

  SUBCASE("rows parse to records") {
    write_text(dir.path / "labels.csv", "id,arousal,valence\nu1,0.3,-0.5\n");
    auto labels = load_labels(dir.path / "labels.csv");
    REQUIRE(labels.size() == 1);
    CHECK(labels[0].id == "u1");
    CHECK(labels[0].arousal == 0.3);
    CHECK(labels[0].valence == -0.5);
  }

  SUBCASE("duplicate id is an error naming the id") {
    write_text(dir.path / "labels.csv", "id,arousal,valence\nu1,0.3,0.5\nu1,0.1,0.2\n");
    CHECK_THROWS_WITH_AS(load_labels(dir.path / "labels.csv"), doctest::Contains("u1"),
                         EsnError);
  }

  SUBCASE("missing header rejected") {
    write_text(dir.path / "labels.csv", "u1,0.3,0.5\n");
    CHECK_THROWS_WITH_AS(load_labels(dir.path / "labels.csv"),
                         doctest::Contains("header"), EsnError);
  }

  SUBCASE("missing column rejected") {
    write_text(dir.path / "labels.csv", "id,arousal,valence\nu1,0.3\n");
    CHECK_THROWS_AS(load_labels(dir.path / "labels.csv"), EsnError);
  }

  SUBCASE("write_labels round-trips") {
    std::vector<LabelRecord> labels{{"a", 0.25, -0.75}, {"b", 1.0 / 3.0, 0.0}};
    write_labels(dir.path / "labels.csv", labels);
    auto back = load_labels(dir.path / "labels.csv");
    REQUIRE(back.size() == 2);
    CHECK(back[0].arousal == labels[0].arousal);
    CHECK(back[1].arousal == labels[1].arousal);
  }
}

TEST_CASE("build_manifest: csv discovery, sorting, labels.csv exclusion") {
  TempDir dir;
  UtteranceSeries s;
  s.values = Matrix(1, kNumChannels);
  s.id = "b";
  write_utterance(dir.path / "b.csv", s);
  s.id = "a";
  write_utterance(dir.path / "a.csv", s);
  write_text(dir.path / "labels.csv", "id,arousal,valence\n");
  write_text(dir.path / "notes.txt", "ignore me");

  Manifest m = build_manifest(dir.path);
  REQUIRE(m.entries.size() == 2);
  CHECK(m.entries[0].id == "a");
  CHECK(m.entries[1].id == "b");
}

TEST_CASE("load_labeled_corpus joins features and labels strictly") {
  TempDir dir;
  UtteranceSeries s;
  s.values = Matrix(2, kNumChannels, 0.5);
  s.id = "u1";
  write_utterance(dir.path / "u1.csv", s);
  s.id = "u2";
  write_utterance(dir.path / "u2.csv", s);

  SUBCASE("happy path") {
    write_text(dir.path / "labels.csv", "id,arousal,valence\nu2,0.2,0.1\nu1,0.4,-0.2\n");
    LabeledCorpus corpus = load_labeled_corpus(dir.path, dir.path / "labels.csv");
    REQUIRE(corpus.size() == 2);
    CHECK(corpus[0].series.id == "u1");
    CHECK(corpus[0].arousal == 0.4);
    CHECK(corpus[1].series.id == "u2");
    CHECK(corpus[1].valence == 0.1);
  }

  SUBCASE("feature without label rejected") {
    write_text(dir.path / "labels.csv", "id,arousal,valence\nu1,0.4,-0.2\n");
    CHECK_THROWS_WITH_AS(load_labeled_corpus(dir.path, dir.path / "labels.csv"),
                         doctest::Contains("u2"), EsnError);
  }

  SUBCASE("label without feature rejected") {
    write_text(dir.path / "labels.csv",
               "id,arousal,valence\nu1,0.4,-0.2\nu2,0.2,0.1\nghost,0,0\n");
    CHECK_THROWS_WITH_AS(load_labeled_corpus(dir.path, dir.path / "labels.csv"),
                         doctest::Contains("ghost"), EsnError);
  }

  SUBCASE("empty directory reports no utterances") {
    TempDir empty;
    write_text(empty.path / "labels.csv", "id,arousal,valence\n");
    CHECK_THROWS_WITH_AS(load_labeled_corpus(empty.path, empty.path / "labels.csv"),
                         doctest::Contains("no utterances"), EsnError);
  }
}

TEST_CASE("generate_synthetic_corpus: determinism, framing, label oracle") {
  SUBCASE("same arguments, identical corpus") {
    auto a = generate_synthetic_corpus(3, 20, 40, 99, 0.05);
    auto b = generate_synthetic_corpus(3, 20, 40, 99, 0.05);
    REQUIRE(a.series.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(a.series[i].id == b.series[i].id);
      CHECK(a.series[i].values == b.series[i].values);
      CHECK(a.labels[i].arousal == b.labels[i].arousal);
      CHECK(a.labels[i].valence == b.labels[i].valence);
    }
  }

  SUBCASE("degenerate frames_range pins the frame count") {
    auto c = generate_synthetic_corpus(5, 30, 30, 7, 0.05);
    for (const auto& s : c.series) CHECK(s.frames() == 30);
  }

  SUBCASE("frame counts stay inside the range") {
    auto c = generate_synthetic_corpus(20, 60, 120, 3, 0.0);
    for (const auto& s : c.series) {
      CHECK(s.frames() >= 60);
      CHECK(s.frames() <= 120);
    }
  }

  SUBCASE("labels equal the stated functionals of the series, exactly") {
    for (double sigma : {0.0, 0.05}) {
      auto c = generate_synthetic_corpus(10, 20, 50, 31, sigma);
      for (std::size_t i = 0; i < c.series.size(); ++i) {
        CHECK(std::abs(c.labels[i].arousal - synthetic_arousal_of(c.series[i])) < 1e-12);
        CHECK(std::abs(c.labels[i].valence - synthetic_valence_of(c.series[i])) < 1e-12);
      }
    }
  }

  SUBCASE("values live in [0, 1]") {
    auto c = generate_synthetic_corpus(4, 30, 60, 17, 0.1);
    for (const auto& s : c.series)
      for (std::size_t i = 0; i < s.values.size(); ++i) {
        CHECK(s.values.data()[i] >= 0.0);
        CHECK(s.values.data()[i] <= 1.0);
      }
  }

  SUBCASE("bad arguments rejected") {
    CHECK_THROWS_AS(generate_synthetic_corpus(0, 10, 20, 1, 0.05), EsnError);
    CHECK_THROWS_AS(generate_synthetic_corpus(1, 0, 20, 1, 0.05), EsnError);
    CHECK_THROWS_AS(generate_synthetic_corpus(1, 21, 20, 1, 0.05), EsnError);
    CHECK_THROWS_AS(generate_synthetic_corpus(1, 10, 20, 1, -0.1), EsnError);
  }
}

TEST_CASE("synthetic label functionals computable by hand on a constant series") {
  // constant 0.5 everywhere: arousal = 0.5, valence = 0.5 - 0.5 = 0
  UtteranceSeries s;
  s.id = "const";
  s.values = Matrix(12, kNumChannels, 0.5);
  CHECK(synthetic_arousal_of(s) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(synthetic_valence_of(s) == doctest::Approx(0.0).epsilon(1e-15));

  // positive evidence 0.9, negative 0.1 -> valence 0.8
  for (std::size_t t = 0; t < 12; ++t) {
    s.values(t, kPositiveChannel) = 0.9;
    s.values(t, kNegativeChannel) = 0.1;
  }
  CHECK(synthetic_valence_of(s) == doctest::Approx(0.8).epsilon(1e-12));
}
