#include "fph/montecarlo.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "fph/faultline.hpp"
#include "fph/rng.hpp"

namespace fph::mc {

namespace {

constexpr int kShards = 16;

struct Accum {
  std::vector<double> sum;
  std::vector<double> sumsq;
};

// yields per-shard sample counts summing to `samples`
long shard_count(long samples, int shard) {
  const long base = samples / kShards;
  return base + (shard < samples % kShards ? 1 : 0);
}

template <typename PerSample>
std::vector<Estimate> run_sharded(int width, long samples, std::uint64_t seed,
                                  const PerSample& eval) {
  if (samples < 1) throw std::invalid_argument("monte carlo: samples must be >= 1");

  std::vector<Accum> parts(kShards);
  auto work = [&](int s) {
    Accum acc;
    acc.sum.assign(static_cast<size_t>(width), 0.0);
    acc.sumsq.assign(static_cast<size_t>(width), 0.0);
    RandomStream stream(shard_seed(seed, static_cast<std::uint64_t>(s)));
    std::vector<double> row(static_cast<size_t>(width));
    const long cnt = shard_count(samples, s);
    for (long k = 0; k < cnt; ++k) {
      eval(stream, row);
      for (int j = 0; j < width; ++j) {
        acc.sum[static_cast<size_t>(j)] += row[static_cast<size_t>(j)];
        acc.sumsq[static_cast<size_t>(j)] += row[static_cast<size_t>(j)] * row[static_cast<size_t>(j)];
      }
    }
    return acc;
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (hw > 1 && samples >= 4 * kShards) {
    std::vector<std::future<Accum>> futs;
    futs.reserve(kShards);
    for (int s = 0; s < kShards; ++s)
      futs.push_back(std::async(std::launch::async, work, s));
    for (int s = 0; s < kShards; ++s) parts[static_cast<size_t>(s)] = futs[static_cast<size_t>(s)].get();
  } else {
    for (int s = 0; s < kShards; ++s) parts[static_cast<size_t>(s)] = work(s);
  }

  // combine in shard order: deterministic floating-point reduction
  std::vector<double> sum(static_cast<size_t>(width), 0.0);
  std::vector<double> sumsq(static_cast<size_t>(width), 0.0);
  for (const auto& p : parts)
    for (int j = 0; j < width; ++j) {
      sum[static_cast<size_t>(j)] += p.sum[static_cast<size_t>(j)];
      sumsq[static_cast<size_t>(j)] += p.sumsq[static_cast<size_t>(j)];
    }

  std::vector<Estimate> out(static_cast<size_t>(width));
  for (int j = 0; j < width; ++j) {
    const double mean = sum[static_cast<size_t>(j)] / static_cast<double>(samples);
    double se = std::numeric_limits<double>::quiet_NaN();
    if (samples >= 2) {
      const double var = std::max(
          0.0, (sumsq[static_cast<size_t>(j)] - static_cast<double>(samples) * mean * mean) /
                   static_cast<double>(samples - 1));
      se = std::sqrt(var / static_cast<double>(samples));
    }
    out[static_cast<size_t>(j)] = {mean, se};
  }
  return out;
}

}  // namespace

std::vector<Estimate> payoffs(const GameConfig& config, const Profile& profile,
                              long samples, std::uint64_t seed) {
  if (profile.size() != config.n)
    throw std::invalid_argument("mc::payoffs: profile size != config.n");
  return run_sharded(
      config.n, samples, seed, [&](RandomStream& stream, std::vector<double>& row) {
        const FaultSet faults = faultline::sample_faults(config.lambda, stream);
        const auto vals = faultline::realized_payoffs(profile, faults);
        for (size_t j = 0; j < vals.size(); ++j) row[j] = vals[j];
      });
}

Estimate disconnected_fraction(const GameConfig& config, const Profile& profile,
                               long samples, std::uint64_t seed) {
  auto res = run_sharded(
      1, samples, seed, [&](RandomStream& stream, std::vector<double>& row) {
        const FaultSet faults = faultline::sample_faults(config.lambda, stream);
        row[0] = faultline::disconnected_length(profile, faults);
      });
  return res[0];
}

}  // namespace fph::mc
