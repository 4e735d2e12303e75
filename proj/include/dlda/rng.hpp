#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>

#include "dlda/errors.hpp"

namespace dlda {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace detail

// Combines a base seed with stream tags into a new seed. Used to split one
// master seed into independent streams (per node, per document, ...) so that
// parallel and serial execution consume randomness identically.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t state = base;
    (void)detail::splitmix64(state);
    for (std::uint64_t t : tags) {
        state ^= t + 0x9e3779b97f4a7c15ULL + (state << 6) + (state >> 2);
        (void)detail::splitmix64(state);
    }
    return detail::splitmix64(state);
}

// xoshiro256++ with explicitly implemented sampling routines.
//
// The standard <random> engines are portable but the distributions are not
// (their algorithms are implementation-defined), so all distributions here
// are written out. The 4-word state makes checkpoint serialization trivial.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = detail::splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl64(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl64(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound). Rejection sampling, unbiased.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw ConfigError("Rng::below: bound must be positive");
        const std::uint64_t threshold = -bound % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Index sampled proportionally to `weights`, whose sum is `total`.
    // Caller guarantees total > 0 and weights nonnegative.
    std::size_t pick(std::span<const double> weights, double total) {
        const double u = uniform01() * total;
        double cum = 0.0;
        for (std::size_t k = 0; k + 1 < weights.size(); ++k) {
            cum += weights[k];
            if (u < cum) return k;
        }
        return weights.size() - 1;
    }

    // As pick(), but computes the total and validates it.
    std::size_t categorical(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        if (!(total > 0.0) || !std::isfinite(total)) {
            throw NumericalError("categorical sampling: weight total is not positive and finite");
        }
        return pick(weights, total);
    }

    // Standard normal via Box-Muller (one value per call).
    double normal() {
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    // Gamma(shape, 1) via Marsaglia-Tsang, with the shape < 1 boost.
    double gamma(double shape) {
        if (!(shape > 0.0)) throw ConfigError("Rng::gamma: shape must be positive");
        if (shape < 1.0) {
            const double u = 1.0 - uniform01();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // Dirichlet draw by gamma normalization; out.size() == alpha.size().
    void dirichlet(std::span<const double> alpha, std::span<double> out) {
        double sum = 0.0;
        while (!(sum > 0.0)) {
            sum = 0.0;
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                out[i] = gamma(alpha[i]);
                sum += out[i];
            }
        }
        for (auto& v : out) v /= sum;
    }

    // Poisson via Knuth's product-of-uniforms; fine for the means used here.
    int poisson(double mean) {
        if (!(mean > 0.0)) throw ConfigError("Rng::poisson: mean must be positive");
        const double limit = std::exp(-mean);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform01();
        } while (p > limit);
        return k - 1;
    }

    std::array<std::uint64_t, 4> state() const { return state_; }
    void set_state(const std::array<std::uint64_t, 4>& s) { state_ = s; }

    std::string state_string() const {
        std::ostringstream os;
        os << state_[0] << ' ' << state_[1] << ' ' << state_[2] << ' ' << state_[3];
        return os.str();
    }

    static Rng from_state_string(const std::string& text) {
        std::istringstream is(text);
        std::array<std::uint64_t, 4> s{};
        if (!(is >> s[0] >> s[1] >> s[2] >> s[3])) {
            throw IoError("malformed rng state: '" + text + "'");
        }
        Rng r(0);
        r.set_state(s);
        return r;
    }

    bool operator==(const Rng& other) const { return state_ == other.state_; }

private:
    std::array<std::uint64_t, 4> state_{};
};

// Child stream keyed on (parent seed, tags).
inline Rng derive_rng(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
    return Rng(derive_seed(base, tags));
}

}  // namespace dlda
