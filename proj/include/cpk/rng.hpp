#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cpk/check.hpp"

namespace cpk {

// Deterministic random source. std::uniform_int_distribution is
// implementation-defined, so bounded draws are done by rejection sampling to
// keep generated instances byte-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform draw from [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        CPK_CHECK(bound > 0);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    bool coin() { return (engine_() & 1u) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Random permutation of 0..n-1.
    std::vector<int> permutation(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        shuffle(p);
        return p;
    }

    // k distinct values from [0, bound), in random order.
    std::vector<std::uint64_t> sample(std::uint64_t bound, std::uint64_t k) {
        CPK_CHECK(k <= bound);
        // Floyd's algorithm; avoids materialising [0, bound).
        std::vector<std::uint64_t> out;
        out.reserve(k);
        for (std::uint64_t j = bound - k; j < bound; ++j) {
            std::uint64_t t = below(j + 1);
            bool seen = false;
            for (auto v : out) {
                if (v == t) {
                    seen = true;
                    break;
                }
            }
            if (seen)
                out.push_back(j);
            else
                out.push_back(t);
        }
        shuffle(out);
        return out;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace cpk
