#pragma once

#include <cstdint>
#include <vector>

#include "augtor/laurent.hpp"

namespace testutil {

// Deterministic splitmix64; property tests must not depend on libc rand.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    augtor::LaurentPoly poly(long max_deg, long max_abs_coeff, long min_exp = 0) {
        long d = range(0, max_deg);
        std::vector<augtor::Int> c(static_cast<std::size_t>(d) + 1);
        for (auto& x : c) x = range(-max_abs_coeff, max_abs_coeff);
        return augtor::LaurentPoly(std::move(c), min_exp);
    }

    augtor::LaurentPoly nonzero_poly(long max_deg, long max_abs_coeff, long min_exp = 0) {
        for (;;) {
            auto f = poly(max_deg, max_abs_coeff, min_exp);
            if (!f.is_zero()) return f;
        }
    }
};

}  // namespace testutil
