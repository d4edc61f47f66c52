// Serial-vs-OpenMP comparison for the hot kernels and the end-to-end embed
// path. The two variants share per-element code, so outputs must be
// bit-identical; this target reports throughput only.
//
//   ./esn_bench [reservoir_size] [frames] [utterances]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>

#include "esn/evaluation.hpp"
#include "esn/kernels.hpp"
#include "esn/rng.hpp"

using namespace esn;
using Clock = std::chrono::steady_clock;

namespace {

double time_of(const std::function<void()>& fn, int repeats) {
  const auto start = Clock::now();
  for (int i = 0; i < repeats; ++i) fn();
  return std::chrono::duration<double>(Clock::now() - start).count() /
         static_cast<double>(repeats);
}

void row(const char* name, double serial_s, double parallel_s, bool identical) {
  std::printf("%-24s %10.4f ms %10.4f ms %7.2fx  %s\n", name, serial_s * 1e3,
              parallel_s * 1e3, serial_s / parallel_s,
              identical ? "bit-identical" : "MISMATCH");
}

Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  Matrix m(r, c);
  RandomStream rs(seed);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = rs.next_uniform(-1.0, 1.0);
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 500;
  const std::size_t frames = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 200;
  const std::size_t utterances = argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 50;

  std::printf("threads: %d, reservoir %zu, %zu frames, %zu utterances\n",
              omp_get_max_threads(), n, frames, utterances);
  std::printf("%-24s %13s %13s %8s\n", "kernel", "serial", "openmp", "speedup");

  EsnConfig config;
  config.reservoir_size = n;
  const Reservoir reservoir = build_reservoir(config, kNumChannels);

  // leaky_step, the per-frame hot loop
  {
    Vector x(n, 0.1), u(kNumChannels, 0.5), out_s(n), out_p(n);
    const double ts = time_of(
        [&] {
          for (std::size_t t = 0; t < frames; ++t)
            kernels::leaky_step_serial(reservoir.w_rec, reservoir.w_in,
                                       config.leak_rate, x, u, out_s);
        },
        3);
    const double tp = time_of(
        [&] {
          for (std::size_t t = 0; t < frames; ++t)
            kernels::leaky_step_omp(reservoir.w_rec, reservoir.w_in, config.leak_rate, x,
                                    u, out_p);
        },
        3);
    row("leaky_step", ts, tp,
        std::memcmp(out_s.data(), out_p.data(), n * sizeof(double)) == 0);
  }

  // gram matrix of an embedding block
  {
    const Matrix x = random_matrix(utterances, n + kNumChannels + 1, 3);
    Matrix gs(x.cols(), x.cols()), gp(x.cols(), x.cols());
    const double ts = time_of([&] { kernels::gram_serial(x, gs); }, 3);
    const double tp = time_of([&] { kernels::gram_omp(x, gp); }, 3);
    row("gram", ts, tp, gs == gp);
  }

  // moving average over a long 23-channel series
  {
    const Matrix x = random_matrix(20000, kNumChannels, 4);
    Matrix as(x.rows(), x.cols()), ap(x.rows(), x.cols());
    const double ts = time_of([&] { kernels::moving_average_serial(x, 15, as); }, 3);
    const double tp = time_of([&] { kernels::moving_average_omp(x, 15, ap); }, 3);
    row("moving_average", ts, tp, as == ap);
  }

  // end to end: preprocess + reservoir run + embed + ridge across a corpus
  {
    auto synth = generate_synthetic_corpus(utterances, frames, frames, 5, 0.05);
    LabeledCorpus corpus;
    for (std::size_t i = 0; i < synth.series.size(); ++i)
      corpus.push_back(
          {std::move(synth.series[i]), synth.labels[i].arousal, synth.labels[i].valence});
    const auto shared = std::make_shared<const Reservoir>(reservoir);

    TrainedModel ms, mp;
    const double ts = time_of(
        [&] { ms = train_pipeline(corpus, config, SmoothingConfig{}, shared, Exec::kSerial); },
        1);
    const double tp = time_of(
        [&] {
          mp = train_pipeline(corpus, config, SmoothingConfig{}, shared, Exec::kParallel);
        },
        1);
    row("train_pipeline", ts, tp, ms.readout.w_out == mp.readout.w_out);
  }

  return 0;
}
