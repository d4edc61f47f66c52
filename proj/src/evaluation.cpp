#include "esn/evaluation.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <ostream>
#include <sstream>

#include "esn/errors.hpp"
#include "esn/rng.hpp"
#include "esn/text.hpp"

namespace esn {

FoldAssignment kfold_split(std::vector<std::string> ids, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw EsnError("kfold_split: need k >= 2");
  if (ids.size() < k) {
    throw EsnError("kfold_split: " + std::to_string(ids.size()) + " ids for k = " +
                   std::to_string(k));
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw EsnError("kfold_split: duplicate ids");
  }

  RandomStream rs(seed);
  for (std::size_t i = ids.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rs.next_below(i + 1));
    std::swap(ids[i], ids[j]);
  }

  FoldAssignment folds;
  folds.k = k;
  for (std::size_t i = 0; i < ids.size(); ++i) folds.fold_of[ids[i]] = i % k;
  return folds;
}

namespace {

// Shared embedding path: clamp washout for short utterances, run the
// reservoir, average post-washout states and inputs.
Vector embed_preprocessed(const Reservoir& r, const Matrix& series, std::size_t washout,
                          Exec exec) {
  const std::size_t frames = series.rows();
  const std::size_t applied = std::min(washout, frames - 1);
  StateSequence states = run_sequence(r, series, applied, exec);
  Vector u_mean(series.cols(), 0.0);
  for (std::size_t c = 0; c < series.cols(); ++c) {
    double acc = 0.0;
    for (std::size_t t = applied; t < frames; ++t) acc += series(t, c);
    u_mean[c] = acc / static_cast<double>(frames - applied);
  }
  return mean_state_embedding(states, u_mean);
}

Matrix preprocess(const TrainedModel& m, const UtteranceSeries& raw, Exec exec) {
  return moving_average(apply_normalization(m.normalization, raw), m.smoothing, exec).values;
}

void check_labeled(const LabeledCorpus& corpus, const char* where) {
  if (corpus.empty()) throw EsnError(std::string(where) + ": empty corpus");
  for (const auto& u : corpus) {
    if (u.series.values.cols() != kNumChannels) {
      throw EsnError(std::string(where) + ": utterance '" + u.series.id + "' has " +
                     std::to_string(u.series.values.cols()) + " channels, expected " +
                     std::to_string(kNumChannels));
    }
    if (u.series.frames() < 1) {
      throw EsnError(std::string(where) + ": utterance '" + u.series.id + "' has no frames");
    }
  }
}

}  // namespace

TrainedModel train_pipeline(const LabeledCorpus& train, const EsnConfig& config,
                            const SmoothingConfig& smoothing,
                            std::shared_ptr<const Reservoir> reservoir, Exec exec) {
  check_labeled(train, "train_pipeline");
  config.validate();
  if (smoothing.window < 1) throw EsnError("train_pipeline: smoothing window must be >= 1");

  TrainedModel model;
  model.config = config;
  model.smoothing = smoothing;

  std::vector<const UtteranceSeries*> series;
  series.reserve(train.size());
  for (const auto& u : train) series.push_back(&u.series);
  model.normalization = fit_normalization(series);

  model.reservoir =
      reservoir ? std::move(reservoir)
                : std::make_shared<const Reservoir>(build_reservoir(config, kNumChannels));
  if (model.reservoir->input_dim != kNumChannels) {
    throw EsnError("train_pipeline: reservoir input_dim " +
                   std::to_string(model.reservoir->input_dim) + " does not match the " +
                   std::to_string(kNumChannels) + "-channel schema");
  }
  if (!(model.reservoir->config == config)) {
    throw EsnError("train_pipeline: prebuilt reservoir was built from a different config");
  }

  const std::size_t n = train.size();
  Matrix embeddings(n, model.reservoir->embedding_dim());
  Matrix targets(n, 2);
  std::exception_ptr first_error;

#pragma omp parallel for schedule(dynamic) if (exec == Exec::kParallel)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      const auto& u = train[static_cast<std::size_t>(i)];
      Matrix pre = preprocess(model, u.series, Exec::kSerial);
      Vector e = embed_preprocessed(*model.reservoir, pre, config.washout, Exec::kSerial);
      std::copy(e.begin(), e.end(), embeddings.row(static_cast<std::size_t>(i)).begin());
      targets(static_cast<std::size_t>(i), 0) = u.arousal;
      targets(static_cast<std::size_t>(i), 1) = u.valence;
    } catch (...) {
#pragma omp critical
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);

  model.readout = fit_ridge(embeddings, targets, config.ridge_beta, exec);
  return model;
}

std::array<double, 2> predict_utterance(const TrainedModel& m, const UtteranceSeries& s) {
  Matrix pre = preprocess(m, s, Exec::kSerial);
  Vector e = embed_preprocessed(*m.reservoir, pre, m.config.washout, Exec::kSerial);
  Vector out = predict(m.readout, e);
  return {out[0], out[1]};
}

EvalOutcome evaluate_pipeline(const TrainedModel& m, const LabeledCorpus& eval_set,
                              Exec exec) {
  check_labeled(eval_set, "evaluate_pipeline");
  const std::size_t n = eval_set.size();
  Vector pred_a(n), pred_v(n), truth_a(n), truth_v(n);
  std::exception_ptr first_error;

#pragma omp parallel for schedule(dynamic) if (exec == Exec::kParallel)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      const auto& u = eval_set[static_cast<std::size_t>(i)];
      const auto out = predict_utterance(m, u.series);
      pred_a[static_cast<std::size_t>(i)] = out[0];
      pred_v[static_cast<std::size_t>(i)] = out[1];
      truth_a[static_cast<std::size_t>(i)] = u.arousal;
      truth_v[static_cast<std::size_t>(i)] = u.valence;
    } catch (...) {
#pragma omp critical
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);

  EvalOutcome outcome;
  outcome.n = n;
  outcome.arousal = {ccc(pred_a, truth_a), mse(pred_a, truth_a)};
  outcome.valence = {ccc(pred_v, truth_v), mse(pred_v, truth_v)};
  return outcome;
}

EvalReport cross_validate(const LabeledCorpus& corpus, const EsnConfig& config,
                          const SmoothingConfig& smoothing, std::size_t k,
                          std::uint64_t split_seed, Exec exec) {
  check_labeled(corpus, "cross_validate");
  config.validate();

  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return corpus[a].series.id < corpus[b].series.id;
  });

  std::vector<std::string> ids;
  ids.reserve(corpus.size());
  for (std::size_t i : order) ids.push_back(corpus[i].series.id);
  const FoldAssignment folds = kfold_split(ids, k, split_seed);

  EvalReport report;
  report.config = config;
  report.smoothing = smoothing;
  report.k = k;
  report.split_seed = split_seed;
  report.input_dim = kNumChannels;

  const auto shared_reservoir =
      std::make_shared<const Reservoir>(build_reservoir(config, kNumChannels));

  Vector pool_pred_a, pool_pred_v, pool_truth_a, pool_truth_v;
  pool_pred_a.reserve(corpus.size());
  pool_pred_v.reserve(corpus.size());
  pool_truth_a.reserve(corpus.size());
  pool_truth_v.reserve(corpus.size());

  for (std::size_t f = 0; f < k; ++f) {
    LabeledCorpus train_set, eval_set;
    for (std::size_t i : order) {
      const auto& u = corpus[i];
      (folds.fold_of.at(u.series.id) == f ? eval_set : train_set).push_back(u);
    }

    TrainedModel model = train_pipeline(train_set, config, smoothing, shared_reservoir, exec);

    const std::size_t n = eval_set.size();
    Vector pred_a(n), pred_v(n), truth_a(n), truth_v(n);
    std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::kParallel)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      try {
        const auto& u = eval_set[static_cast<std::size_t>(i)];
        const auto out = predict_utterance(model, u.series);
        pred_a[static_cast<std::size_t>(i)] = out[0];
        pred_v[static_cast<std::size_t>(i)] = out[1];
        truth_a[static_cast<std::size_t>(i)] = u.arousal;
        truth_v[static_cast<std::size_t>(i)] = u.valence;
      } catch (...) {
#pragma omp critical
        if (!first_error) first_error = std::current_exception();
      }
    }
    if (first_error) std::rethrow_exception(first_error);

    FoldResult result;
    result.fold = f;
    result.n_utterances = n;
    result.arousal = {ccc(pred_a, truth_a), mse(pred_a, truth_a)};
    result.valence = {ccc(pred_v, truth_v), mse(pred_v, truth_v)};
    for (const auto& u : eval_set) result.members.push_back(u.series.id);
    result.norm_fitted_on = model.normalization.fitted_on;
    report.per_fold.push_back(std::move(result));

    pool_pred_a.insert(pool_pred_a.end(), pred_a.begin(), pred_a.end());
    pool_pred_v.insert(pool_pred_v.end(), pred_v.begin(), pred_v.end());
    pool_truth_a.insert(pool_truth_a.end(), truth_a.begin(), truth_a.end());
    pool_truth_v.insert(pool_truth_v.end(), truth_v.begin(), truth_v.end());
  }

  report.aggregate.n = pool_pred_a.size();
  report.aggregate.arousal = {ccc(pool_pred_a, pool_truth_a), mse(pool_pred_a, pool_truth_a)};
  report.aggregate.valence = {ccc(pool_pred_v, pool_truth_v), mse(pool_pred_v, pool_truth_v)};
  return report;
}

void write_report(std::ostream& os, const EvalReport& report) {
  const EsnConfig& c = report.config;
  os << "esn-affect-report v1\n";
  os << "seed " << c.seed << "\n";
  os << "split_seed " << report.split_seed << "\n";
  os << "folds " << report.k << "\n";
  os << "reservoir_size " << c.reservoir_size << "\n";
  os << "spectral_radius " << fmt_double(c.spectral_radius) << "\n";
  os << "ridge_beta " << fmt_double(c.ridge_beta) << "\n";
  os << "leak_rate " << fmt_double(c.leak_rate) << "\n";
  os << "input_scaling " << fmt_double(c.input_scaling) << "\n";
  os << "connectivity " << fmt_double(c.connectivity) << "\n";
  os << "washout " << c.washout << "\n";
  os << "smooth_window " << report.smoothing.window << "\n";
  os << "input_dim " << report.input_dim << "\n";
  for (const auto& fold : report.per_fold) {
    os << "fold " << fold.fold << " n " << fold.n_utterances << " ccc_arousal "
       << fmt_double(fold.arousal.ccc) << " ccc_valence " << fmt_double(fold.valence.ccc)
       << " mse_arousal " << fmt_double(fold.arousal.mse) << " mse_valence "
       << fmt_double(fold.valence.mse) << "\n";
  }
  os << "aggregate n " << report.aggregate.n << " ccc_arousal "
     << fmt_double(report.aggregate.arousal.ccc) << " ccc_valence "
     << fmt_double(report.aggregate.valence.ccc) << " mse_arousal "
     << fmt_double(report.aggregate.arousal.mse) << " mse_valence "
     << fmt_double(report.aggregate.valence.mse) << "\n";
  for (const auto& fold : report.per_fold) {
    os << "fold_members " << fold.fold;
    for (const auto& id : fold.members) os << " " << id;
    os << "\n";
  }
  for (const auto& fold : report.per_fold) {
    os << "fold_norm_fitted_on " << fold.fold;
    for (const auto& id : fold.norm_fitted_on) os << " " << id;
    os << "\n";
  }
}

std::string report_to_string(const EvalReport& report) {
  std::ostringstream os;
  write_report(os, report);
  return os.str();
}

}  // namespace esn
