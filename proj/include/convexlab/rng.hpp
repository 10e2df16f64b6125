#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace convexlab {

// Deterministic random stream: xoshiro256++ seeded through splitmix64.
// The generator and every derived sampler below are implemented in this
// project (no std::*_distribution), so a given seed reproduces the same
// stream of variates on every platform.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    std::uint64_t seed() const { return seed0_; }
    std::uint64_t next_u64();

    double uniform01();                 // [0, 1), 53-bit resolution
    double uniform_pos();               // (0, 1]
    double uniform(double a, double b); // [a, b)
    std::uint64_t below(std::uint64_t bound);  // [0, bound)

    double exponential(double rate = 1.0);
    double normal();                    // standard normal, Marsaglia polar
    double gamma(double shape);         // unit scale, Marsaglia-Tsang
    double beta(double a, double b);

    // Independent child stream; derived from the initial seed, so splits are
    // reproducible regardless of how much of the parent was consumed.
    RngStream split(std::uint64_t key) const;

    // k i.i.d. uniforms on [0, hi], sorted ascending.
    std::vector<double> sorted_uniforms(int k, double hi);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t seed0_;
    std::uint64_t s_[4];
};

// Binomial(n, p) sampling by inverted CDF lookup. Tables are memoized per
// (n, p) pair; a cache instance is meant to live for the duration of one
// tight sampling loop where the same parameters recur.
class BinomialCache {
public:
    int sample(RngStream& rng, int n, double p);

private:
    struct Table {
        int lo = 0;
        std::vector<double> cdf;
    };
    const Table& table_for(int n, double p);
    std::unordered_map<std::uint64_t, Table> tables_;
};

// Multinomial(n; weights) via conditional binomials. Weights need not sum
// to one. Returns counts, one per weight.
std::vector<int> multinomial(RngStream& rng, BinomialCache& cache, int n,
                             std::span<const double> weights);

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t hash_name(const char* name);  // FNV-1a, for per-test seeds

}  // namespace convexlab
