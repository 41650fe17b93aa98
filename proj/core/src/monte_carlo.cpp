#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "maxent/error.hpp"
#include "maxent/estimators.hpp"

namespace maxent {

namespace {

// Uniform on (0, 1] from the top 53 bits.
double unit_open_closed(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

struct Sampler {
  const IntMatrix& a;
  const std::vector<std::int64_t>& b;
  EntropyModel model;
  Vector rate;  // geometric: ln(1 + 1/z_j); bernoulli: z_j

  std::uint64_t count_block(std::uint64_t seed, std::uint64_t block, std::uint64_t size) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    std::mt19937_64 engine(seq);
    const std::size_t n = a.cols;
    const std::size_t d = a.rows;
    std::vector<std::int64_t> x(n);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < size; ++s) {
      for (std::size_t j = 0; j < n; ++j) {
        const double u = unit_open_closed(engine());
        if (model == EntropyModel::Geometric) {
          x[j] = static_cast<std::int64_t>(std::floor(-std::log(u) / rate[j]));
        } else {
          x[j] = u <= rate[j] ? 1 : 0;
        }
      }
      bool inside = true;
      for (std::size_t i = 0; i < d && inside; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * x[j];
        inside = acc == b[i];
      }
      hits += inside ? 1 : 0;
    }
    return hits;
  }
};

}  // namespace

double MCEstimate::log_count_std_err() const {
  if (hits == 0 || samples == 0) return std::numeric_limits<double>::infinity();
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return entropy + std::log(std::sqrt(p * (1.0 - p) / static_cast<double>(samples)));
}

MCEstimate monte_carlo_count(const PolytopeSpec& spec, const MaxEntSolution& sol,
                             std::uint64_t samples, std::uint64_t seed, std::size_t shards) {
  if (!is_discrete(spec.domain) || sol.model != default_model(spec.domain)) {
    throw Error(ErrorCode::DomainViolation,
                "Monte Carlo counting needs a counting domain and its matching model");
  }
  if (samples == 0) throw Error(ErrorCode::DimensionMismatch, "need at least one sample");
  shards = std::max<std::size_t>(1, shards);

  const IntMatrix a = to_integer_matrix(spec.A);
  const std::vector<std::int64_t> b = to_integer_vector(spec.b);
  Sampler sampler{a, b, sol.model, Vector(sol.z.size())};
  for (std::size_t j = 0; j < sol.z.size(); ++j) {
    sampler.rate[j] =
        sol.model == EntropyModel::Geometric ? std::log1p(1.0 / sol.z[j]) : sol.z[j];
  }

  const std::uint64_t blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  auto block_size = [&](std::uint64_t k) {
    return std::min(kMonteCarloBlock, samples - k * kMonteCarloBlock);
  };
  std::vector<std::uint64_t> shard_hits(shards, 0);
  auto work = [&](std::size_t shard) {
    std::uint64_t h = 0;
    for (std::uint64_t k = shard; k < blocks; k += shards) {
      h += sampler.count_block(seed, k, block_size(k));
    }
    shard_hits[shard] = h;
  };
  if (shards == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(shards);
    for (std::size_t s = 0; s < shards; ++s) pool.emplace_back(work, s);
  }

  MCEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.shards = shards;
  est.entropy = sol.entropy;
  for (std::uint64_t h : shard_hits) est.hits += h;
  if (est.hits > 0) {
    const double p = static_cast<double>(est.hits) / static_cast<double>(samples);
    est.log_value = sol.entropy + std::log(p);
    est.std_err_log = std::sqrt((1.0 - p) / (static_cast<double>(samples) * p));
  } else {
    est.std_err_log = std::numeric_limits<double>::infinity();
  }
  return est;
}

}  // namespace maxent
