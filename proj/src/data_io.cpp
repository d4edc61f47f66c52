#include "esn/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string_view>
#include <utility>

#include "esn/errors.hpp"
#include "esn/rng.hpp"
#include "esn/text.hpp"

namespace esn {

const std::array<const char*, kNumChannels> kChannelNames = {
    "AU1",  "AU2",  "AU4",  "AU5",  "AU6",  "AU7",  "AU9",  "AU10",
    "AU11", "AU12", "AU14", "AU15", "AU17", "AU18", "AU20", "AU23",
    "AU24", "AU25", "AU26", "AU28", "neutral", "positive", "negative"};

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  // a trailing newline does not add an empty record
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(pos));
      break;
    }
    cells.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return cells;
}

constexpr std::string_view kLabelsHeader = "id,arousal,valence";

}  // namespace

UtteranceSeries load_utterance(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  const auto lines = split_lines(content);
  if (lines.empty()) throw EsnError("feature file " + path.string() + ": empty file");

  UtteranceSeries s;
  s.id = path.stem().string();
  s.values = Matrix(lines.size(), kNumChannels);
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto cells = split_cells(lines[r]);
    if (cells.size() != kNumChannels) {
      throw EsnError("feature file " + path.string() + ": row " + std::to_string(r + 1) +
                     " has " + std::to_string(cells.size()) + " columns, expected " +
                     std::to_string(kNumChannels));
    }
    for (std::size_t c = 0; c < kNumChannels; ++c) {
      const double v = parse_double(
          cells[c], "feature file " + path.string() + ": row " + std::to_string(r + 1) +
                        " col " + std::to_string(c + 1));
      if (!std::isfinite(v)) {
        throw EsnError("feature file " + path.string() + ": row " + std::to_string(r + 1) +
                       " col " + std::to_string(c + 1) + " is not finite");
      }
      s.values(r, c) = v;
    }
  }
  return s;
}

void write_utterance(const std::filesystem::path& path, const UtteranceSeries& s) {
  std::string out;
  out.reserve(s.values.size() * 20);
  for (std::size_t r = 0; r < s.values.rows(); ++r) {
    for (std::size_t c = 0; c < s.values.cols(); ++c) {
      if (c) out += ',';
      out += fmt_double(s.values(r, c));
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

std::vector<LabelRecord> load_labels(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  const auto lines = split_lines(content);
  if (lines.empty() || lines[0] != kLabelsHeader) {
    throw EsnError("labels file " + path.string() + ": missing header '" +
                   std::string(kLabelsHeader) + "'");
  }
  std::vector<LabelRecord> labels;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split_cells(lines[r]);
    if (cells.size() != 3) {
      throw EsnError("labels file " + path.string() + ": row " + std::to_string(r + 1) +
                     " has " + std::to_string(cells.size()) + " columns, expected 3");
    }
    LabelRecord rec;
    rec.id = std::string(cells[0]);
    if (rec.id.empty()) {
      throw EsnError("labels file " + path.string() + ": row " + std::to_string(r + 1) +
                     " has an empty id");
    }
    rec.arousal = parse_double(cells[1], "labels file " + path.string() + ": row " +
                                             std::to_string(r + 1) + " arousal");
    rec.valence = parse_double(cells[2], "labels file " + path.string() + ": row " +
                                             std::to_string(r + 1) + " valence");
    if (!std::isfinite(rec.arousal) || !std::isfinite(rec.valence)) {
      throw EsnError("labels file " + path.string() + ": row " + std::to_string(r + 1) +
                     " has a non-finite label for id '" + rec.id + "'");
    }
    if (!seen.insert(rec.id).second) {
      throw EsnError("labels file " + path.string() + ": duplicate id '" + rec.id + "'");
    }
    labels.push_back(std::move(rec));
  }
  return labels;
}

void write_labels(const std::filesystem::path& path, const std::vector<LabelRecord>& labels) {
  std::string out(kLabelsHeader);
  out += '\n';
  for (const auto& rec : labels) {
    out += rec.id;
    out += ',';
    out += fmt_double(rec.arousal);
    out += ',';
    out += fmt_double(rec.valence);
    out += '\n';
  }
  write_file_atomic(path, out);
}

Manifest build_manifest(const std::filesystem::path& features_dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(features_dir)) {
    throw EsnError("features directory not found: " + features_dir.string());
  }
  Manifest m;
  for (const auto& entry : fs::directory_iterator(features_dir)) {
    if (!entry.is_regular_file()) continue;
    const fs::path& p = entry.path();
    if (p.extension() != ".csv") continue;
    if (p.filename() == "labels.csv") continue;  // co-located labels file
    m.entries.push_back({p.stem().string(), p, false});
  }
  std::sort(m.entries.begin(), m.entries.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < m.entries.size(); ++i) {
    if (m.entries[i].id == m.entries[i - 1].id) {
      throw EsnError("manifest: duplicate utterance id '" + m.entries[i].id + "'");
    }
  }
  return m;
}

std::vector<UtteranceSeries> load_corpus(const std::filesystem::path& features_dir) {
  const Manifest manifest = build_manifest(features_dir);
  if (manifest.entries.empty()) {
    throw EsnError("no utterances found in " + features_dir.string());
  }
  std::vector<UtteranceSeries> corpus;
  corpus.reserve(manifest.entries.size());
  for (const auto& entry : manifest.entries) corpus.push_back(load_utterance(entry.features));
  return corpus;
}

LabeledCorpus load_labeled_corpus(const std::filesystem::path& features_dir,
                                  const std::filesystem::path& labels_path) {
  auto series = load_corpus(features_dir);
  const auto labels = load_labels(labels_path);

  std::set<std::string> feature_ids;
  for (const auto& s : series) feature_ids.insert(s.id);
  for (const auto& rec : labels) {
    if (!feature_ids.count(rec.id)) {
      throw EsnError("labels file " + labels_path.string() + ": id '" + rec.id +
                     "' has no feature file in " + features_dir.string());
    }
  }

  std::map<std::string, const LabelRecord*> by_id;
  for (const auto& rec : labels) by_id[rec.id] = &rec;

  LabeledCorpus corpus;
  corpus.reserve(series.size());
  for (auto& s : series) {
    auto it = by_id.find(s.id);
    if (it == by_id.end()) {
      throw EsnError("utterance '" + s.id + "' has no label in " + labels_path.string());
    }
    corpus.push_back({std::move(s), it->second->arousal, it->second->valence});
  }
  return corpus;
}

double synthetic_arousal_of(const UtteranceSeries& s) {
  double acc = 0.0;
  for (std::size_t t = 0; t < s.values.rows(); ++t) {
    for (std::size_t c = 0; c < 5; ++c) acc += s.values(t, c);
  }
  return acc / static_cast<double>(s.values.rows() * 5);
}

double synthetic_valence_of(const UtteranceSeries& s) {
  double pos = 0.0, neg = 0.0;
  for (std::size_t t = 0; t < s.values.rows(); ++t) {
    pos += s.values(t, kPositiveChannel);
    neg += s.values(t, kNegativeChannel);
  }
  const auto frames = static_cast<double>(s.values.rows());
  return pos / frames - neg / frames;
}

SyntheticCorpus generate_synthetic_corpus(std::size_t n_utterances, std::size_t frames_min,
                                          std::size_t frames_max, std::uint64_t seed,
                                          double noise_sigma) {
  if (n_utterances < 1) throw EsnError("generate_synthetic_corpus: need n_utterances >= 1");
  if (frames_min < 1 || frames_min > frames_max) {
    throw EsnError("generate_synthetic_corpus: need 1 <= frames_min <= frames_max");
  }
  if (!(noise_sigma >= 0.0)) {
    throw EsnError("generate_synthetic_corpus: noise_sigma must be non-negative");
  }

  constexpr std::size_t kComponents = 3;
  constexpr double kTwoPi = 6.283185307179586476925286766559;

  RandomStream rs(seed);
  SyntheticCorpus corpus;
  corpus.series.reserve(n_utterances);
  corpus.labels.reserve(n_utterances);

  for (std::size_t i = 0; i < n_utterances; ++i) {
    const std::size_t frames =
        frames_min + static_cast<std::size_t>(rs.next_below(frames_max - frames_min + 1));

    UtteranceSeries s;
    char name[32];
    std::snprintf(name, sizeof(name), "synth_%04zu", i);
    s.id = name;
    s.values = Matrix(frames, kNumChannels);

    // per-channel sinusoid parameters first, then frame-major noise
    double amp[kNumChannels][kComponents];
    double freq[kNumChannels][kComponents];
    double phase[kNumChannels][kComponents];
    for (std::size_t c = 0; c < kNumChannels; ++c) {
      for (std::size_t j = 0; j < kComponents; ++j) {
        amp[c][j] = 0.3 + 0.7 * rs.next_unit();
        freq[c][j] = 0.002 + 0.05 * rs.next_unit();  // cycles per frame
        phase[c][j] = kTwoPi * rs.next_unit();
      }
    }
    for (std::size_t t = 0; t < frames; ++t) {
      for (std::size_t c = 0; c < kNumChannels; ++c) {
        double raw = 0.0;
        for (std::size_t j = 0; j < kComponents; ++j) {
          raw += amp[c][j] * std::sin(kTwoPi * freq[c][j] * static_cast<double>(t) +
                                      phase[c][j]);
        }
        if (noise_sigma > 0.0) raw += noise_sigma * rs.next_gaussian();
        s.values(t, c) = 0.5 * (1.0 + std::tanh(raw));
      }
    }

    LabelRecord rec;
    rec.id = s.id;
    rec.arousal = synthetic_arousal_of(s);
    rec.valence = synthetic_valence_of(s);
    corpus.labels.push_back(std::move(rec));
    corpus.series.push_back(std::move(s));
  }
  return corpus;
}

}  // namespace esn
