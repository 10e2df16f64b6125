#include "convexlab/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace convexlab {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t hash_name(const char* name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char* c = name; *c; ++c) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(*c));
        h *= 0x100000001b3ULL;
    }
    return h;
}

RngStream::RngStream(std::uint64_t seed) : seed0_(seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
}

static inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() { return 1.0 - uniform01(); }

double RngStream::uniform(double a, double b) { return a + (b - a) * uniform01(); }

std::uint64_t RngStream::below(std::uint64_t bound) {
    // multiply-shift; bias is O(bound / 2^64), negligible here
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
}

double RngStream::exponential(double rate) {
    return -std::log(uniform_pos()) / rate;
}

double RngStream::normal() {
    for (;;) {
        const double u = 2.0 * uniform01() - 1.0;
        const double v = 2.0 * uniform01() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

double RngStream::gamma(double shape) {
    if (shape <= 0.0) throw std::invalid_argument("gamma: shape must be positive");
    if (shape < 1.0) {
        const double u = uniform_pos();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double z = normal();
        const double t = 1.0 + c * z;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = uniform_pos();
        if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) return d * v;
    }
}

double RngStream::beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
}

RngStream RngStream::split(std::uint64_t key) const {
    std::uint64_t sm = seed0_ ^ (0x9E3779B97F4A7C15ULL * (key + 1));
    return RngStream(splitmix64(sm));
}

std::vector<double> RngStream::sorted_uniforms(int k, double hi) {
    std::vector<double> u(static_cast<std::size_t>(k));
    for (auto& v : u) v = uniform(0.0, hi);
    std::sort(u.begin(), u.end());
    return u;
}

const BinomialCache::Table& BinomialCache::table_for(int n, double p) {
    std::uint64_t key = std::bit_cast<std::uint64_t>(p);
    key ^= 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(n);
    auto it = tables_.find(key);
    if (it != tables_.end()) return it->second;

    Table t;
    if (n > 0 && p > 0.0 && p < 1.0) {
        int mode = static_cast<int>((n + 1.0) * p);
        if (mode > n) mode = n;
        const double lq = std::log1p(-p);
        const double lp = std::log(p);
        const double ln_mode = std::lgamma(n + 1.0) - std::lgamma(mode + 1.0) -
                               std::lgamma(n - mode + 1.0) + mode * lp + (n - mode) * lq;
        // expand from the mode until the tail mass is far below double precision
        const double cutoff = ln_mode + std::log(1e-18);
        int lo = mode, hi = mode;
        std::vector<double> down, up;
        // pmf(k-1)/pmf(k) = k (1-p) / ((n-k+1) p)
        double lw = ln_mode;
        for (int k = mode; k > 0; --k) {
            const double step = std::log(static_cast<double>(k)) -
                                std::log(static_cast<double>(n - k + 1)) + lq - lp;
            lw += step;
            if (lw < cutoff) break;
            down.push_back(lw);
            lo = k - 1;
        }
        double lw2 = ln_mode;
        for (int k = mode; k < n; ++k) {
            const double step = std::log(static_cast<double>(n - k)) -
                                std::log(static_cast<double>(k + 1)) + lp - lq;
            lw2 += step;
            if (lw2 < cutoff) break;
            up.push_back(lw2);
            hi = k + 1;
        }
        t.lo = lo;
        t.cdf.resize(static_cast<std::size_t>(hi - lo + 1));
        double acc = 0.0;
        for (int k = lo; k <= hi; ++k) {
            double lnw;
            if (k < mode) lnw = down[static_cast<std::size_t>(mode - 1 - k)];
            else if (k == mode) lnw = ln_mode;
            else lnw = up[static_cast<std::size_t>(k - mode - 1)];
            acc += std::exp(lnw - ln_mode);
            t.cdf[static_cast<std::size_t>(k - lo)] = acc;
        }
        for (auto& c : t.cdf) c /= acc;
    } else {
        t.lo = (p >= 1.0) ? n : 0;
        t.cdf = {1.0};
    }
    if (tables_.size() > 65536) tables_.clear();
    return tables_.emplace(key, std::move(t)).first->second;
}

int BinomialCache::sample(RngStream& rng, int n, double p) {
    if (n < 0) throw std::invalid_argument("binomial: n must be non-negative");
    if (n == 0) return 0;
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n;
    const Table& t = table_for(n, p);
    const double u = rng.uniform01();
    auto it = std::lower_bound(t.cdf.begin(), t.cdf.end(), u);
    if (it == t.cdf.end()) --it;
    return t.lo + static_cast<int>(it - t.cdf.begin());
}

std::vector<int> multinomial(RngStream& rng, BinomialCache& cache, int n,
                             std::span<const double> weights) {
    std::vector<int> out(weights.size(), 0);
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("multinomial: negative weight");
        wsum += w;
    }
    int rem = n;
    for (std::size_t i = 0; i + 1 < weights.size() && rem > 0; ++i) {
        const double p = (wsum > 0.0) ? weights[i] / wsum : 0.0;
        const int k = cache.sample(rng, rem, p);
        out[i] = k;
        rem -= k;
        wsum -= weights[i];
    }
    if (!out.empty()) out.back() += rem;
    return out;
}

}  // namespace convexlab
