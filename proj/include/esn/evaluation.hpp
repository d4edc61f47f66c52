#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "esn/config.hpp"
#include "esn/data_io.hpp"
#include "esn/metrics.hpp"
#include "esn/preprocessing.hpp"
#include "esn/reservoir.hpp"
#include "esn/ridge.hpp"
#include "esn/sequence.hpp"

namespace esn {

/// Disjoint, exhaustive partition of an id set; fold sizes differ by at most
/// one. Depends only on the id set, k and seed (ids are sorted before the
/// seeded shuffle, then dealt round-robin).
struct FoldAssignment {
  std::size_t k = 0;
  std::map<std::string, std::size_t> fold_of;
};

FoldAssignment kfold_split(std::vector<std::string> ids, std::size_t k,
                           std::uint64_t seed);

/// Everything needed to predict: frozen preprocessing, the reservoir, and the
/// ridge readout. Immutable once trained.
struct TrainedModel {
  EsnConfig config;
  SmoothingConfig smoothing;
  NormalizationModel normalization;
  std::shared_ptr<const Reservoir> reservoir;
  ReadoutWeights readout;
};

/// Fits normalization on `train` only, preprocesses, embeds every utterance
/// (mean post-washout state + mean input + bias) and solves the joint ridge
/// readout for (arousal, valence). Washout is clamped to frames-1 for short
/// utterances. Pass a prebuilt reservoir to skip the build (it must match
/// config; cross_validate shares one across folds).
TrainedModel train_pipeline(const LabeledCorpus& train, const EsnConfig& config,
                            const SmoothingConfig& smoothing,
                            std::shared_ptr<const Reservoir> reservoir = nullptr,
                            Exec exec = Exec::kParallel);

/// (arousal, valence) for one raw utterance through the frozen pipeline.
/// The single prediction path shared by evaluate and predict.
std::array<double, 2> predict_utterance(const TrainedModel& m, const UtteranceSeries& s);

struct EvalOutcome {
  MetricPair arousal;
  MetricPair valence;
  std::size_t n = 0;
};

/// Pooled CCC/MSE per target over the whole eval set (order: corpus order).
EvalOutcome evaluate_pipeline(const TrainedModel& m, const LabeledCorpus& eval_set,
                              Exec exec = Exec::kParallel);

struct FoldResult {
  std::size_t fold = 0;
  std::size_t n_utterances = 0;
  MetricPair arousal;
  MetricPair valence;
  std::vector<std::string> members;         // validated ids
  std::vector<std::string> norm_fitted_on;  // ids behind this fold's normalization
};

struct EvalReport {
  EsnConfig config;
  SmoothingConfig smoothing;
  std::size_t k = 0;
  std::uint64_t split_seed = 0;
  std::size_t input_dim = 0;
  std::vector<FoldResult> per_fold;
  EvalOutcome aggregate;  // pooled predictions across folds, not fold means
};

/// k-fold cross-validation. Normalization and readout are refit per fold on
/// that fold's training ids only; one reservoir (built from config.seed) is
/// shared by all folds. Aggregate metrics are computed on the pooled
/// prediction vectors, fold 0 first.
EvalReport cross_validate(const LabeledCorpus& corpus, const EsnConfig& config,
                          const SmoothingConfig& smoothing, std::size_t k,
                          std::uint64_t split_seed, Exec exec = Exec::kParallel);

/// Pinned text serialization (field names documented in the README). Byte
/// deterministic: 17-significant-digit numbers, sorted ids, no timestamps.
void write_report(std::ostream& os, const EvalReport& report);
std::string report_to_string(const EvalReport& report);

}  // namespace esn
