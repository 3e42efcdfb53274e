#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <vector>

#include "augtor/laurent.hpp"

namespace augtor {

inline unsigned long euler_phi(unsigned long n) {
    if (n == 0) throw domain_error("euler_phi(0)");
    unsigned long result = n;
    unsigned long m = n;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

inline int mobius(unsigned long n) {
    if (n == 0) throw domain_error("mobius(0)");
    int sign = 1;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

inline std::vector<unsigned long> divisors_of(unsigned long n) {
    if (n == 0) throw domain_error("divisors of 0");
    std::vector<unsigned long> small, large;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// d-th cyclotomic polynomial, computed by exact division of t^d - 1 by the
/// lower-order cyclotomics. Memoized; the cache lock makes concurrent
/// lookups safe.
inline LaurentPoly cyclotomic_poly(unsigned long d) {
    if (d == 0) throw domain_error("cyclotomic_poly(0)");
    static std::map<unsigned long, LaurentPoly> cache;
    static std::mutex cache_mutex;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(d);
        if (it != cache.end()) return it->second;
    }
    LaurentPoly result;
    if (d == 1) {
        result = LaurentPoly({-1, 1}, 0);
    } else {
        LaurentPoly q = cyclic_poly(static_cast<long>(d));
        for (unsigned long e : divisors_of(d))
            if (e < d) q = div_exact(q, cyclotomic_poly(e));
        result = q;
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(d, result);
    return result;
}

/// Phi_d(1): 0 for d = 1, p for prime powers p^k, 1 otherwise.
inline Int cyclotomic_value_at_one(unsigned long d) {
    if (d == 0) throw domain_error("cyclotomic_value_at_one(0)");
    if (d == 1) return 0;
    for (unsigned long p = 2; p * p <= d; ++p) {
        if (d % p == 0) {
            while (d % p == 0) d /= p;
            return d == 1 ? Int(static_cast<long>(p)) : Int(1);
        }
    }
    return Int(static_cast<long>(d));  // d itself prime
}

/// delta = prod Phi_d^e_d * g with g free of cyclotomic factors.
/// gamma = lcm of the orders d; q = multiplicity of Phi_1 = t - 1;
/// weight = sum phi(d) * (e_d - 1) over the found orders.
struct CycloFactorization {
    std::vector<std::pair<unsigned long, unsigned>> factors;  // (d, e_d), d ascending
    LaurentPoly g;
    unsigned long gamma = 1;
    unsigned q = 0;
    unsigned long weight = 0;

    unsigned multiplicity(unsigned long d) const {
        for (const auto& [order, e] : factors)
            if (order == d) return e;
        return 0;
    }
};

/// Splits off every cyclotomic divisor of delta. Candidate orders d are the
/// ones with phi(d) <= deg delta, and phi(d) >= sqrt(d/2) bounds the search.
inline CycloFactorization cyclo_factorize(const LaurentPoly& delta) {
    if (delta.is_zero()) throw degenerate_input_error("cyclotomic factorization of zero");
    CycloFactorization out;
    LaurentPoly rest = delta;
    unsigned long deg = static_cast<unsigned long>(delta.span());
    unsigned long d_max = 2 * deg * deg + 1;
    for (unsigned long d = 1; d <= d_max && rest.span() > 0; ++d) {
        if (euler_phi(d) > static_cast<unsigned long>(rest.span())) continue;
        LaurentPoly phi = cyclotomic_poly(d);
        unsigned e = 0;
        for (;;) {
            auto [ok, q] = try_div_exact(rest, phi);
            if (!ok) break;
            rest = q;
            ++e;
        }
        if (e > 0) {
            out.factors.emplace_back(d, e);
            out.gamma = std::lcm(out.gamma, d);
            out.weight += euler_phi(d) * (e - 1);
            if (d == 1) out.q = e;
        }
    }
    out.g = rest;
    return out;
}

}  // namespace augtor
