#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ugraph/rational.hpp"

namespace ugraph {

// Deterministic randomness, identical across platforms:
//  - engine: std::mt19937_64 (bit-exact by the standard);
//  - substreams: derive(seed, tag[, index]) via splitmix64, one stream per
//    role (vertices, edges, shards, replicates) so vertex sets can be
//    replayed against different edge randomizations;
//  - uniforms: 53-bit mantissa grid k * 2^-53;
//  - gaussians: Marsaglia polar transform using IEEE sqrt and an in-house
//    log (atanh series after frexp range reduction) so no libm call with
//    platform-dependent rounding enters the stream.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

enum class StreamRole : std::uint64_t {
    vertices = 1,
    edges = 2,
    tuples = 3,
    shards = 4,
    replicates = 5,
    probes = 6,
};

inline std::uint64_t derive_seed(std::uint64_t seed, StreamRole role, std::uint64_t index = 0) {
    std::uint64_t h = splitmix64(seed ^ (static_cast<std::uint64_t>(role) * 0xa0761d6478bd642fULL));
    return splitmix64(h ^ (index * 0xe7037ed1a0b428dbULL));
}

/// log(x) for x in (0, 1]; deterministic fixed-length atanh series.
inline double deterministic_log(double x) {
    int e = 0;
    double m = std::frexp(x, &e);  // m in [0.5, 1), exact decomposition
    // log(m) = 2 atanh((m-1)/(m+1)); |t| <= 1/3 so 26 terms reach 1 ulp.
    double t = (m - 1.0) / (m + 1.0);
    double t2 = t * t;
    double term = t;
    double acc = 0.0;
    for (int k = 0; k < 26; ++k) {
        acc += term / static_cast<double>(2 * k + 1);
        term *= t2;
    }
    constexpr double ln2 = 0.69314718055994530942;
    return 2.0 * acc + static_cast<double>(e) * ln2;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on the 2^-53 grid in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// The raw 53-bit numerator of one uniform draw (for exact comparisons).
    std::uint64_t uniform_bits() { return eng_() >> 11; }

    /// Uniform integer in [0, n) by rejection; n >= 1.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
        while (true) {
            std::uint64_t r = eng_();
            if (r >= threshold) return r % n;
        }
    }

    /// Standard normal via the polar method (consumes a variable, stream-
    /// deterministic number of uniforms).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        while (true) {
            double u = 2.0 * uniform() - 1.0;
            double v = 2.0 * uniform() - 1.0;
            double s = u * u + v * v;
            if (s >= 1.0 || s == 0.0) continue;
            double f = std::sqrt(-2.0 * deterministic_log(s) / s);
            spare_ = v * f;
            have_spare_ = true;
            return u * f;
        }
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Exact Bernoulli(p) for rational p in [0,1]: succeeds iff a 53-bit
/// uniform numerator k satisfies k < p * 2^53 (success probability is the
/// grid value nearest below p, off by < 2^-53). The comparison reduces to
/// one precomputed 64-bit threshold.
class BernoulliGate {
public:
    explicit BernoulliGate(const Rational& p) {
        if (p < 0 || p > 1) throw std::invalid_argument("BernoulliGate: p must lie in [0,1]");
        if (num(p) == 0) {
            never_ = true;
            return;
        }
        Int q = num(p) << 53;
        Int t = q / den(p);
        Int r = q % den(p);
        // k < q/den  <=>  k <= t - (r == 0 ? 1 : 0)
        threshold_ = (r == 0 ? Int(t - 1) : t).convert_to<std::uint64_t>();
    }
    bool draw(Rng& rng) const { return !never_ && rng.uniform_bits() <= threshold_; }

private:
    std::uint64_t threshold_ = 0;
    bool never_ = false;
};

/// Exact sampler over blocks with rational masses (cumulative thresholds on
/// the 53-bit uniform grid).
class BlockSampler {
public:
    explicit BlockSampler(const std::vector<Rational>& masses) {
        Rational cum = 0;
        for (std::size_t i = 0; i + 1 < masses.size(); ++i) {
            cum += masses[i];
            Int q = num(cum) << 53;
            Int t = q / den(cum);
            Int r = q % den(cum);
            upper_.push_back((r == 0 ? Int(t - 1) : t).convert_to<std::uint64_t>());
        }
    }
    std::size_t draw(Rng& rng) const {
        std::uint64_t k = rng.uniform_bits();
        std::size_t b = 0;
        while (b < upper_.size() && k > upper_[b]) ++b;
        return b;
    }

private:
    std::vector<std::uint64_t> upper_;  // block b covers k <= upper_[b]
};

/// Fisher-Yates with the project RNG (std::shuffle is not cross-platform
/// deterministic).
template <typename T>
void deterministic_shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace ugraph
