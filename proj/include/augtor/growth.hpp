#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "laurent.hpp"
#include "torsion.hpp"

// Numerical layer: root isolation, Mahler measure, growth-rate samples of the
// torsion sequence and of its p-components.  Cyclotomic factors and repeated
// factors are split off exactly first, so the floating point work only ever
// sees squarefree integer polynomials with no roots of unity.

namespace augtor {

struct Bounded {
    double value = 0.0;
    double bound = 0.0;  // |value - true| <= bound
};

struct RootBox {
    std::complex<double> value;
    double radius = 0.0;
    // Certified interval for |root| straddles 1 without the root being a root
    // of unity; Mahler error bounds widen across such a box.
    bool near_unit = false;
};

namespace detail {

// Two-double split keeps the conversion error near the long double ulp even
// for coefficients beyond 53 bits.
inline long double ld_of(const Int& v) {
    double hi = v.get_d();
    Int rest(v - Int(hi));
    return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

// Horner value together with sum |a_i| |z|^i, which scales the rounding error.
inline std::complex<long double> horner_ld(const std::vector<long double>& a,
                                           const std::complex<long double>& z,
                                           long double& mag) {
    std::complex<long double> acc(a.back(), 0.0L);
    mag = std::fabs(a.back());
    long double az = std::abs(z);
    for (std::size_t i = a.size() - 1; i-- > 0;) {
        acc = acc * z + a[i];
        mag = mag * az + std::fabs(a[i]);
    }
    return acc;
}

// Aberth simultaneous iteration on a squarefree integer polynomial (no roots
// of unity).  Deterministic: fixed ring start, in-place sweeps.  Radii are
// the classical d |p/p'| inclusion bound inflated by the evaluation error.
inline std::vector<std::pair<std::complex<long double>, long double>> aberth_roots(
    const LaurentPoly& part) {
    using C = std::complex<long double>;
    const long double kPi = 3.141592653589793238462643383279503L;
    const long double kEps = 1.1e-19L;
    long d = part.span();
    std::vector<long double> a(static_cast<std::size_t>(d) + 1);
    for (long i = 0; i <= d; ++i) a[static_cast<std::size_t>(i)] = ld_of(part.coeff(i));
    std::vector<long double> da(static_cast<std::size_t>(d));
    for (long i = 1; i <= d; ++i)
        da[static_cast<std::size_t>(i - 1)] = a[static_cast<std::size_t>(i)] * static_cast<long double>(i);

    long double big = 0.0L;
    for (long i = 0; i < d; ++i)
        big = std::max(big, std::fabs(a[static_cast<std::size_t>(i)] / a[static_cast<std::size_t>(d)]));
    long double ring = 1.0L + big;  // Cauchy bound
    std::vector<C> z(static_cast<std::size_t>(d));
    for (long k = 0; k < d; ++k) {
        long double th = 2.0L * kPi * static_cast<long double>(k) / static_cast<long double>(d) + 0.376L;
        z[static_cast<std::size_t>(k)] = C(ring * std::cos(th), ring * std::sin(th));
    }

    for (int iter = 0; iter < 240; ++iter) {
        long double worst = 0.0L;
        for (long k = 0; k < d; ++k) {
            C& zk = z[static_cast<std::size_t>(k)];
            long double mag;
            C p = horner_ld(a, zk, mag);
            if (std::abs(p) == 0.0L) continue;
            C dp = horner_ld(da, zk, mag);
            if (std::abs(dp) == 0.0L) {
                zk += C(1e-3L, 1e-3L);
                worst = 1.0L;
                continue;
            }
            C w = p / dp;
            C sum(0.0L, 0.0L);
            for (long j = 0; j < d; ++j)
                if (j != k) sum += C(1.0L, 0.0L) / (zk - z[static_cast<std::size_t>(j)]);
            C den = C(1.0L, 0.0L) - w * sum;
            C corr = std::abs(den) < 1e-30L ? w : w / den;
            zk -= corr;
            worst = std::max(worst, std::abs(corr) / std::max(1.0L, std::abs(zk)));
        }
        if (worst < 1e-19L) break;
    }

    std::vector<std::pair<C, long double>> out;
    out.reserve(static_cast<std::size_t>(d));
    long double scale = kEps * static_cast<long double>(3 * d + 4);
    for (long k = 0; k < d; ++k) {
        const C& zk = z[static_cast<std::size_t>(k)];
        long double magp, magd;
        C p = horner_ld(a, zk, magp);
        C dp = horner_ld(da, zk, magd);
        long double den = std::abs(dp) - magd * scale;
        if (den <= 0.0L)
            throw precision_error("cannot certify a root: derivative vanishes within working precision");
        long double rad = static_cast<long double>(d) * (std::abs(p) + magp * scale) / den;
        out.emplace_back(zk, rad);
    }

    // Reconstruction: lc * prod (t - z_k) must reproduce the coefficients,
    // catching lost or doubled roots.
    std::vector<C> rec{C(1.0L, 0.0L)};
    for (const auto& [root, rad] : out) {
        rec.push_back(C(0.0L, 0.0L));
        for (std::size_t i = rec.size() - 1; i > 0; --i) rec[i] = rec[i - 1] - rec[i] * root;
        rec[0] = -rec[0] * root;
    }
    long double amax = 0.0L;
    for (long i = 0; i <= d; ++i) amax = std::max(amax, std::fabs(a[static_cast<std::size_t>(i)]));
    for (long i = 0; i <= d; ++i) {
        long double diff = std::abs(rec[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(d)] -
                                    C(a[static_cast<std::size_t>(i)], 0.0L));
        if (diff > 1e-9L * amax)
            throw precision_error("root reconstruction mismatch at degree " + std::to_string(i));
    }
    return out;
}

inline double growth_root(const Int& b, long r) {
    if (r < 1) throw domain_error("growth samples need r >= 1");
    if (b < 1) throw domain_error("growth samples need b_r >= 1");
    long e2;
    double mant = mpz_get_d_2exp(&e2, b.get_mpz_t());
    return std::exp((std::log(mant) + static_cast<double>(e2) * std::log(2.0)) /
                    static_cast<double>(r));
}

}  // namespace detail

/// All span(f) roots with multiplicity, sorted by (re, im).  Roots of unity
/// come from the exact cyclotomic split (radius at the double ulp); the rest
/// from Aberth iteration on the squarefree parts, certified per root.
inline std::vector<RootBox> complex_roots(const LaurentPoly& f, double eps) {
    if (eps <= 0.0) throw domain_error("complex_roots needs eps > 0");
    if (f.is_zero() || f.span() < 1)
        throw domain_error("complex_roots needs a nonconstant polynomial");

    std::vector<RootBox> out;
    CycloFactorization cf = cyclo_factorize(f);
    const double kTau = 6.283185307179586476925287;
    for (const auto& [d, e] : cf.factors) {
        for (unsigned long k = 0; k < d; ++k) {
            if (std::gcd(k, d) != 1) continue;
            RootBox box;
            if (d == 1)
                box.value = {1.0, 0.0};
            else if (d == 2)
                box.value = {-1.0, 0.0};
            else if (d == 4)
                box.value = {0.0, k == 1 ? 1.0 : -1.0};
            else {
                double th = kTau * static_cast<double>(k) / static_cast<double>(d);
                box.value = {std::cos(th), std::sin(th)};
                box.radius = 4.5e-16;
            }
            for (unsigned long i = 0; i < e; ++i) out.push_back(box);
        }
    }

    if (cf.g.span() >= 1) {
        LaurentPoly g = cf.g.shifted(-cf.g.min_exp());
        SquarefreeDecomposition dec = squarefree_decomposition(g);
        for (const auto& [part, mult] : dec.parts) {
            for (const auto& [root, rad] : detail::aberth_roots(part)) {
                long double m = std::abs(root);
                RootBox box;
                box.value = {static_cast<double>(root.real()), static_cast<double>(root.imag())};
                box.radius = static_cast<double>((rad + m * 2.3e-19L) * 1.0001L);
                box.near_unit = (m - rad <= 1.0L) && (1.0L <= m + rad);
                for (unsigned i = 0; i < mult; ++i) out.push_back(box);
            }
        }
    }

    for (const auto& box : out)
        if (box.radius > eps)
            throw precision_error("certified root radius exceeds the requested eps");
    std::sort(out.begin(), out.end(), [](const RootBox& x, const RootBox& y) {
        if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
        return x.value.imag() < y.value.imag();
    });
    return out;
}

/// M(f) = |c_0| prod max(1, |alpha_i|); M(0) = 0.  Cyclotomic factors
/// contribute exactly 1 and never touch floating point, so products of
/// cyclotomics come out exact.  A certified interval straddling |alpha| = 1
/// widens the bound instead of failing.
inline Bounded mahler_measure(const LaurentPoly& f, double eps) {
    if (eps <= 0.0) throw domain_error("mahler_measure needs eps > 0");
    if (f.is_zero()) return {0.0, 0.0};

    CycloFactorization cf = cyclo_factorize(f);
    LaurentPoly g = cf.g.shifted(-cf.g.min_exp());
    long double lead = detail::ld_of(Int(abs(g.leading_coeff())));
    long double lo = 1.0L, hi = 1.0L;
    long roots = 0;
    bool straddle = false;
    if (g.span() >= 1) {
        SquarefreeDecomposition dec = squarefree_decomposition(g);
        for (const auto& [part, mult] : dec.parts) {
            for (const auto& [root, rad] : detail::aberth_roots(part)) {
                long double m = std::abs(root);
                long double l = std::max(1.0L, m - rad);
                long double h = std::max(1.0L, m + rad);
                if (m - rad < 1.0L && 1.0L < m + rad) straddle = true;
                for (unsigned i = 0; i < mult; ++i) {
                    lo *= l;
                    hi *= h;
                    ++roots;
                }
            }
        }
    }
    long double mid = lead * 0.5L * (lo + hi);
    long double bound = lead * 0.5L * (hi - lo);
    if (roots > 0) bound += mid * static_cast<long double>(3 * roots + 6) * 1.1e-19L;
    Bounded out{static_cast<double>(mid), static_cast<double>(bound)};
    if (out.bound > eps && !straddle)
        throw precision_error("Mahler bound exceeds the requested eps");
    return out;
}

/// Plain r-th root samples b_r^{1/r}; no extrapolation.
inline std::vector<std::pair<long, double>> growth_samples(
    const std::vector<std::pair<long, Int>>& seq) {
    std::vector<std::pair<long, double>> out;
    out.reserve(seq.size());
    for (const auto& [r, b] : seq) out.emplace_back(r, detail::growth_root(b, r));
    return out;
}

struct PGrowthFragment {
    std::vector<std::pair<long, double>> samples;  // (r, (b_r^(p))^{1/r})
    Int target = 1;                                // (content Delta)^(p)
    double final_gap = 0.0;                        // last sample vs target
};

/// p-component root samples next to the constant they should approach.
/// Draws no asymptotic conclusion itself.
inline PGrowthFragment p_growth(const std::vector<std::pair<long, Int>>& seq, const Int& p,
                                const LaurentPoly& delta) {
    if (seq.empty()) throw domain_error("p_growth needs a nonempty sequence");
    if (delta.is_zero()) throw degenerate_input_error("p_growth needs a nonzero polynomial");
    PGrowthFragment out;
    out.target = p_component(content(delta), p);
    out.samples.reserve(seq.size());
    for (const auto& [r, b] : seq)
        out.samples.emplace_back(r, detail::growth_root(p_component(b, p), r));
    out.final_gap = std::fabs(out.samples.back().second - out.target.get_d());
    return out;
}

struct SquarePrimeProbe {
    bool is_square = false;
    std::optional<long> sqrt_digits;
    std::optional<bool> sqrt_probable_prime;  // 64 Miller-Rabin rounds
};

inline SquarePrimeProbe square_prime_probe(const Int& n) {
    if (n < 1) throw domain_error("square_prime_probe needs n >= 1");
    SquarePrimeProbe out;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return out;
    out.is_square = true;
    Int root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    out.sqrt_digits = static_cast<long>(root.get_str().size());
    out.sqrt_probable_prime = mpz_probab_prime_p(root.get_mpz_t(), 64) >= 1;
    return out;
}

struct GrowthReport {
    Bounded mahler;
    std::vector<std::pair<long, double>> samples;  // (r, b_r^{1/r}), each >= 1
    std::optional<Int> p;
    std::vector<std::pair<long, double>> p_samples;
    std::optional<Int> content_p;
};

inline GrowthReport growth_report(const LaurentPoly& delta, const std::vector<long>& probes,
                                  double eps, const std::optional<Int>& p = std::nullopt) {
    if (delta.is_zero()) throw degenerate_input_error("growth report needs a nonzero polynomial");
    if (probes.empty()) throw domain_error("growth report needs at least one probe");
    GrowthReport out;
    out.mahler = mahler_measure(delta, eps);
    std::vector<std::pair<long, Int>> seq;
    seq.reserve(probes.size());
    for (long r : probes) seq.emplace_back(r, torsion_formula(delta, r));
    out.samples = growth_samples(seq);
    if (p) {
        PGrowthFragment frag = p_growth(seq, *p, delta);
        out.p = *p;
        out.p_samples = std::move(frag.samples);
        out.content_p = std::move(frag.target);
    }
    return out;
}

}  // namespace augtor
