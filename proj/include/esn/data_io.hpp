#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "esn/matrix.hpp"

namespace esn {

inline constexpr std::size_t kNumChannels = 23;
inline constexpr double kFrameRateHz = 30.0;

// Channel layout: 20 AUs in FACS order, then the three evidence channels.
inline constexpr std::size_t kNeutralChannel = 20;
inline constexpr std::size_t kPositiveChannel = 21;
inline constexpr std::size_t kNegativeChannel = 22;

extern const std::array<const char*, kNumChannels> kChannelNames;

/// One utterance's frame-level features: frames x 23 channels at 30 fps.
struct UtteranceSeries {
  std::string id;
  Matrix values;

  std::size_t frames() const { return values.rows(); }
};

struct LabelRecord {
  std::string id;
  double arousal = 0.0;
  double valence = 0.0;
};

struct ManifestEntry {
  std::string id;
  std::filesystem::path features;
  bool has_label = false;
};

/// Directory convention: every *.csv in the features directory (labels.csv
/// excluded) is one utterance, id = filename stem. Entries sorted by id.
struct Manifest {
  std::vector<ManifestEntry> entries;
};

struct LabeledUtterance {
  UtteranceSeries series;
  double arousal = 0.0;
  double valence = 0.0;
};

/// Sorted by id; every utterance carries its label.
using LabeledCorpus = std::vector<LabeledUtterance>;

/// Feature file: 23 numeric columns, comma-separated, no header, one row per
/// 1/30 s frame. Errors name the file, row and column.
UtteranceSeries load_utterance(const std::filesystem::path& path);

/// Writes with 17 significant digits so a load round-trips bit-exactly.
/// Atomic: written to a temp file, then renamed.
void write_utterance(const std::filesystem::path& path, const UtteranceSeries& s);

/// labels.csv: header "id,arousal,valence", one row per utterance.
/// Duplicate ids are rejected by name; values must be finite.
std::vector<LabelRecord> load_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path,
                  const std::vector<LabelRecord>& labels);

Manifest build_manifest(const std::filesystem::path& features_dir);

/// All feature files in the directory, loaded and sorted by id.
/// Throws "no utterances found" when the directory has none.
std::vector<UtteranceSeries> load_corpus(const std::filesystem::path& features_dir);

/// Joins features with labels. Every feature file must have a label row and
/// every label row must resolve to a feature file.
LabeledCorpus load_labeled_corpus(const std::filesystem::path& features_dir,
                                  const std::filesystem::path& labels_path);

struct SyntheticCorpus {
  std::vector<UtteranceSeries> series;
  std::vector<LabelRecord> labels;
};

/// Desk-scale benchmark corpus. Each channel is a sum of three random-phase
/// sinusoids plus Gaussian noise, squashed into [0, 1] with a tanh. Targets
/// are deterministic functionals of the materialized series:
///   arousal = mean of the first five channels,
///   valence = mean(positive evidence) - mean(negative evidence),
/// so a competent model can reach high CCC on them.
SyntheticCorpus generate_synthetic_corpus(std::size_t n_utterances,
                                          std::size_t frames_min, std::size_t frames_max,
                                          std::uint64_t seed, double noise_sigma = 0.05);

/// Label functionals above, recomputed from a series. Test oracle surface.
double synthetic_arousal_of(const UtteranceSeries& s);
double synthetic_valence_of(const UtteranceSeries& s);

}  // namespace esn
