// Copyright 2026 The fadecap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fadecap/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "fadecap/bc.hpp"
#include "fadecap/error.hpp"

namespace fadecap::montecarlo {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

// Running mean / second central moment; merged with Chan's update.
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }

  static Moments merge(const Moments& a, const Moments& b) {
    if (a.count == 0.0) return b;
    if (b.count == 0.0) return a;
    Moments out;
    out.count = a.count + b.count;
    const double d = b.mean - a.mean;
    out.mean = a.mean + d * (b.count / out.count);
    out.m2 = a.m2 + b.m2 + d * d * (a.count * b.count / out.count);
    return out;
  }

  double standard_error() const {
    if (count < 2.0) return 0.0;
    return std::sqrt(m2 / (count - 1.0) / count);
  }
};

struct BlockStats {
  std::vector<Moments> rate;
  std::vector<Moments> power;
  std::vector<double> active;
  double multi_active = 0.0;

  explicit BlockStats(std::size_t users)
      : rate(users), power(users), active(users, 0.0) {}

  static BlockStats merge(const BlockStats& a, const BlockStats& b) {
    BlockStats out(a.rate.size());
    for (std::size_t k = 0; k < a.rate.size(); ++k) {
      out.rate[k] = Moments::merge(a.rate[k], b.rate[k]);
      out.power[k] = Moments::merge(a.power[k], b.power[k]);
      out.active[k] = a.active[k] + b.active[k];
    }
    out.multi_active = a.multi_active + b.multi_active;
    return out;
  }
};

// Pairwise tree over blocks in index order; the shape depends only on the
// block count.
BlockStats reduce_pairwise(std::vector<BlockStats>& blocks, std::size_t lo,
                           std::size_t hi) {
  if (hi - lo == 1) return blocks[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return BlockStats::merge(reduce_pairwise(blocks, lo, mid),
                           reduce_pairwise(blocks, mid, hi));
}

double to_unit_interval(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t x = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

template <class BlockFn>
std::vector<BlockStats> run_blocks(std::uint64_t blocks, unsigned workers,
                                   std::size_t users, BlockFn&& fn) {
  std::vector<BlockStats> results(blocks, BlockStats(users));
  unsigned n_workers = workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                    : workers;
  n_workers = static_cast<unsigned>(std::min<std::uint64_t>(n_workers, blocks));
  if (n_workers <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) results[b] = fn(b);
    return results;
  }
  std::vector<std::exception_ptr> errors(n_workers);
  std::vector<std::thread> threads;
  threads.reserve(n_workers);
  for (unsigned w = 0; w < n_workers; ++w) {
    threads.emplace_back([&, w]() {
      try {
        for (std::uint64_t b = w; b < blocks; b += n_workers) results[b] = fn(b);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

CounterRng::CounterRng(std::uint64_t seed)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

void CounterRng::uniforms(std::uint64_t index, std::span<double> out) const {
  const auto lo = static_cast<std::uint32_t>(index);
  const auto hi = static_cast<std::uint32_t>(index >> 32);
  for (std::size_t slot = 0; slot < out.size(); slot += 2) {
    const auto block = philox4x32_10(
        {lo, hi, static_cast<std::uint32_t>(slot / 2), 0u}, key_);
    out[slot] = to_unit_interval(block[1], block[0]);
    if (slot + 1 < out.size()) out[slot + 1] = to_unit_interval(block[3], block[2]);
  }
}

void SimConfig::validate() const {
  if (n_samples < 10'000) throw DomainError("n_samples must be at least 1e4");
  if (batch == 0 || n_samples % batch != 0) {
    throw DomainError("batch must divide n_samples");
  }
}

SimReport simulate(std::span<const FadingModel> models,
                   const PowerPolicy& policy, const SimConfig& config) {
  config.validate();
  const std::size_t n_users = models.size();
  if (n_users == 0) throw DomainError("simulate needs at least one model");
  const CounterRng rng(config.seed);

  auto block_fn = [&](std::uint64_t b) {
    BlockStats stats(n_users);
    std::vector<double> u(n_users);
    std::vector<double> gains(n_users);
    std::vector<double> powers(n_users);
    const std::uint64_t first = b * config.batch;
    for (std::uint64_t s = first; s < first + config.batch; ++s) {
      rng.uniforms(s, u);
      for (std::size_t k = 0; k < n_users; ++k) gains[k] = models[k].sample(u[k]);
      std::fill(powers.begin(), powers.end(), 0.0);
      policy(gains, powers);
      int active = 0;
      for (std::size_t k = 0; k < n_users; ++k) {
        const double p = powers[k];
        if (!(p >= 0.0) || !std::isfinite(p)) {
          std::ostringstream os;
          os << "policy returned power " << p << " for user " << k;
          throw PolicyError(os.str());
        }
        stats.rate[k].add(std::log1p(gains[k] * p));
        stats.power[k].add(p);
        if (p > 0.0) {
          stats.active[k] += 1.0;
          ++active;
        }
      }
      if (active > 1) stats.multi_active += 1.0;
    }
    return stats;
  };

  const std::uint64_t blocks = config.n_samples / config.batch;
  auto results = run_blocks(blocks, config.workers, n_users, block_fn);
  const BlockStats total = reduce_pairwise(results, 0, results.size());

  SimReport report;
  const double n = static_cast<double>(config.n_samples);
  for (std::size_t k = 0; k < n_users; ++k) {
    UserStats u;
    u.empirical_rate = total.rate[k].mean;
    u.empirical_power = total.power[k].mean;
    u.standard_error_rate = total.rate[k].standard_error();
    u.standard_error_power = total.power[k].standard_error();
    u.activation_fraction = total.active[k] / n;
    if (u.activation_fraction > 0.0 && u.activation_fraction < kRareEventThreshold) {
      std::ostringstream os;
      os << "user " << k << " is active in a fraction " << u.activation_fraction
         << " of states; conditional sampling beyond the threshold is "
            "recommended";
      report.warnings.push_back(os.str());
    }
    report.users.push_back(u);
  }
  report.multi_active_fraction = total.multi_active / n;
  return report;
}

SimReport simulate_onoff_conditional(const FadingModel& model,
                                     const single_user::OnOffPolicy1U& policy,
                                     const SimConfig& config) {
  config.validate();
  const double mass = model.tail(policy.threshold);
  if (!(mass > 0.0)) throw DegenerateActivation("no mass beyond the threshold");
  const CounterRng rng(config.seed);
  auto block_fn = [&](std::uint64_t b) {
    BlockStats stats(1);
    double u[1];
    const std::uint64_t first = b * config.batch;
    for (std::uint64_t s = first; s < first + config.batch; ++s) {
      rng.uniforms(s, u);
      const double g = model.sample_above(policy.threshold, u[0]);
      stats.rate[0].add(mass * std::log1p(g * policy.on_power));
    }
    return stats;
  };
  const std::uint64_t blocks = config.n_samples / config.batch;
  auto results = run_blocks(blocks, config.workers, 1, block_fn);
  const BlockStats total = reduce_pairwise(results, 0, results.size());

  SimReport report;
  UserStats u;
  u.empirical_rate = total.rate[0].mean;
  u.standard_error_rate = total.rate[0].standard_error();
  u.empirical_power = mass * policy.on_power;
  u.standard_error_power = 0.0;
  u.activation_fraction = mass;
  report.users.push_back(u);
  return report;
}

namespace policies {

PowerPolicy zero() {
  return [](std::span<const double>, std::span<double>) {};
}

PowerPolicy onoff_single_user(single_user::OnOffPolicy1U policy) {
  return [policy](std::span<const double> gains, std::span<double> powers) {
    if (gains[0] >= policy.threshold) powers[0] = policy.on_power;
  };
}

PowerPolicy onoff_mac(mac::OnOffMacPolicy policy) {
  return [policy = std::move(policy)](std::span<const double> gains,
                                      std::span<double> powers) {
    mac::onoff_mac_powers(policy, gains, powers);
  };
}

PowerPolicy bc(std::vector<double> lambdas) {
  return [lambdas = std::move(lambdas)](std::span<const double> gains,
                                        std::span<double> powers) {
    const auto alloc = fadecap::bc::bc_power_policy(lambdas, gains);
    if (alloc.user) powers[*alloc.user] = alloc.power;
  };
}

}  // namespace policies

}  // namespace fadecap::montecarlo
