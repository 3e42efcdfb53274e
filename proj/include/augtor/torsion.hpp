#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "augtor/cyclotomic.hpp"
#include "augtor/exact_linear.hpp"
#include "augtor/laurent.hpp"
#include "augtor/resultants.hpp"

namespace augtor {

struct TorsionProfile {
    long r = 0;
    long betti = 0;
    Int torsion = 1;     // |T(M/(t^r-1)M)|, always >= 1
    bool pure = true;    // no free part
    std::string method;  // snf | fox | extended | direct_sum | recurrence
};

struct ReducedTorsionProfile {
    long r = 0;
    long betti_reduced = 0;
    Int torsion_reduced = 1;
    std::optional<Int> delta;        // b_r / reduced torsion, when Delta(1) != 0
    std::optional<Int> delta_prime;  // exact q-th root from the (t-1)^q split
};

/// Betti number of M/(t^r-1)M from the rational invariant factors: each pi
/// contributes phi(d) for every d | r with Phi_d | pi. The reduced variant
/// (quotient by nu_r) skips d = 1.
inline long betti(const std::vector<LaurentPoly>& pis, long r, bool reduced = false) {
    if (r < 1) throw domain_error("betti needs r >= 1");
    long total = 0;
    for (const auto& pi : pis) {
        if (pi.is_zero()) throw degenerate_input_error("zero invariant factor");
        for (unsigned long d : divisors_of(static_cast<unsigned long>(r))) {
            if (reduced && d == 1) continue;
            if (divides(cyclotomic_poly(d), pi)) total += static_cast<long>(euler_phi(d));
        }
    }
    return total;
}

/// Oracle route: Smith normal form of the block substitution. reduced swaps
/// t^r-1 for nu_r (companion size r-1; r = 1 quotients by nu_1 = 1, killing
/// the module).
inline TorsionProfile torsion_snf(const PresentationMatrix& a, long r, bool reduced = false) {
    if (r < 1) throw domain_error("torsion_snf needs r >= 1");
    TorsionProfile out;
    out.r = r;
    out.method = "snf";
    if (reduced && r == 1) return out;  // zero module: betti 0, torsion 1
    SnfResult snf =
        smith_normal_form(reduced ? substitute_blocks_nu(a, r) : substitute_blocks(a, r));
    out.betti = snf.free_rank;
    out.torsion = snf.torsion_order;
    out.pure = out.betti == 0;
    return out;
}

namespace detail {

// |Res(Q/Phi, Delta/Phi)| where Q = t^r-1 (or nu_r when reduced) and Phi is
// the product of the distinct Phi_d, d | r (d > 1 when reduced), dividing
// Delta. Large r avoids the full remainder sequence by reducing Q mod
// Phi * Delta0 with binary powering.
inline Int torsion_formula_impl(const LaurentPoly& delta, long r, bool reduced) {
    if (r < 1) throw domain_error("torsion formula needs r >= 1");
    if (delta.is_zero()) throw degenerate_input_error("zero polynomial presents a free module");
    LaurentPoly phi(1);
    for (unsigned long d : divisors_of(static_cast<unsigned long>(r))) {
        if (reduced && d == 1) continue;
        const LaurentPoly& cd = cyclotomic_poly(d);
        if (divides(cd, delta)) phi = phi * cd;
    }
    LaurentPoly a0 = div_exact(delta, phi);
    a0 = a0.shifted(-a0.min_exp());
    long psi_deg = (reduced ? r - 1 : r) - phi.span();
    if (a0.span() == 0) {
        Int v = pow_int(abs(a0.coeff(0)), static_cast<unsigned long>(psi_deg));
        return v;
    }
    if (r <= 64) {
        LaurentPoly psi = div_exact(reduced ? nu(r) : cyclic_poly(r), phi);
        return abs(resultant(psi, a0));
    }
    // Q mod (phi * a0 * maybe (t-1)), then peel the exact divisors back off
    LaurentPoly b = phi * a0;
    std::vector<Rat> bq;
    for (long e = 0; e <= b.span(); ++e) bq.push_back(Rat(b.coeff(e)));
    if (reduced) bq = qmul(bq, {Rat(-1), Rat(1)});
    std::vector<Rat> h = q_powmod_t(static_cast<unsigned long>(r), bq);
    h = qsub(h, {Rat(1)});
    if (reduced) {
        auto [hq, hr] = qdivmod(std::move(h), {Rat(-1), Rat(1)});
        if (!hr.empty()) throw consistency_error("nu reduction left a remainder");
        h = std::move(hq);
    }
    if (phi.span() > 0 || phi.coeff(0) != 1) {
        std::vector<Rat> phiq;
        for (long e = 0; e <= phi.span(); ++e) phiq.push_back(Rat(phi.coeff(e)));
        auto [hq, hr] = qdivmod(std::move(h), phiq);
        if (!hr.empty()) throw consistency_error("cyclotomic peel left a remainder");
        h = std::move(hq);
    }
    if (h.empty()) throw consistency_error("torsion formula product vanished");
    Rat acc = res_against_rational(a0, h);
    acc *= Rat(pow_int(a0.leading_coeff(),
                       static_cast<unsigned long>(psi_deg - qdeg(h))));
    if (acc.get_den() != 1) throw consistency_error("torsion formula produced a non-integer");
    return abs(Int(acc.get_num()));
}

}  // namespace detail

/// b_r for the cyclic module R/(Delta) by the vanishing-root-free resultant;
/// with no cyclotomic divisors of Delta this is Fox's |Res(Delta, t^r-1)|.
inline Int torsion_formula(const LaurentPoly& delta, long r) {
    return detail::torsion_formula_impl(delta, r, false);
}

/// Torsion of a direct sum of cyclic modules: the per-summand products multiply.
inline Int torsion_direct_sum(const std::vector<LaurentPoly>& pis, long r) {
    Int out = 1;
    for (const auto& pi : pis) out *= torsion_formula(pi, r);
    return out;
}

enum class TorsionMethod { automatic, fox, extended, snf };

/// Top-level entry point. Cyclic principal input goes through the resultant
/// formula (tagged fox when no cyclotomic factor divides Delta); everything
/// else through SNF. The formula route is cross-checked against the SNF
/// oracle while the block matrix stays small, since the closed forms assume
/// hypotheses the input may silently violate.
inline TorsionProfile torsion_profile(const PresentationMatrix& a, long r,
                                      TorsionMethod method = TorsionMethod::automatic) {
    if (r < 1) throw domain_error("torsion_profile needs r >= 1");
    constexpr long kCrossCheckLimit = 60;

    if (method == TorsionMethod::snf) return torsion_snf(a, r);

    bool cyclic = a.is_cyclic_principal() && !a.at(0, 0).is_zero();
    if (method == TorsionMethod::automatic && !cyclic) return torsion_snf(a, r);
    if (!cyclic)
        throw domain_error("formula methods need a cyclic presentation with nonzero polynomial");

    const LaurentPoly& delta = a.at(0, 0);
    TorsionProfile out;
    out.r = r;
    out.betti = betti({delta}, r);

    if (method == TorsionMethod::fox) {
        if (out.betti != 0)
            throw hypothesis_error(
                "Fox's formula needs the polynomial nonvanishing at every r-th root of unity");
        out.torsion = abs(res_cyclic(delta, r));
        out.method = "fox";
    } else {
        out.torsion = torsion_formula(delta, r);
        out.method = out.betti == 0 ? "fox" : "extended";
    }
    out.pure = out.betti == 0;

    if (r <= kCrossCheckLimit) {
        TorsionProfile oracle = torsion_snf(a, r);
        if (oracle.betti != out.betti || oracle.torsion != out.torsion)
            throw consistency_error("formula route disagrees with the SNF oracle at r = " +
                                    std::to_string(r));
    }
    return out;
}

struct TorsionRatioReport {
    std::vector<std::pair<long, Int>> ratios;  // (r, b'_r / b_r), each exactly integral
    unsigned long gamma = 1;                   // lcm of cyclotomic orders in the factors
    bool periodic = true;                      // ratios repeat with period gamma in range
};

/// Ratio of the direct-sum bound b'_r (over the rational invariant factors)
/// to the true b_r. Integrality of every ratio is the t-torsion-free
/// hypothesis on the module; violations throw.
inline TorsionRatioReport torsion_ratio_sequence(const PresentationMatrix& a, long r_max) {
    if (r_max < 1) throw domain_error("torsion_ratio_sequence needs r_max >= 1");
    std::vector<LaurentPoly> pis = rational_invariant_factors(a);
    TorsionRatioReport out;
    for (const auto& pi : pis) out.gamma = std::lcm(out.gamma, cyclo_factorize(pi).gamma);
    for (long r = 1; r <= r_max; ++r) {
        Int upper = torsion_direct_sum(pis, r);
        Int lower = torsion_snf(a, r).torsion;
        Int ratio, rem;
        mpz_tdiv_qr(ratio.get_mpz_t(), rem.get_mpz_t(), upper.get_mpz_t(), lower.get_mpz_t());
        if (rem != 0)
            throw hypothesis_error("direct-sum torsion is not a multiple of b_r at r = " +
                                   std::to_string(r) + "; module has integer torsion");
        out.ratios.emplace_back(r, std::move(ratio));
    }
    for (std::size_t i = 0; i + out.gamma < out.ratios.size(); ++i)
        if (out.ratios[i].second != out.ratios[i + out.gamma].second) out.periodic = false;
    return out;
}

namespace detail {

inline LaurentPoly gcd_full(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() && b.is_zero()) return LaurentPoly();
    Int c = gcd(content(a), content(b));
    if (a.is_zero()) return c * primitive_part(b).unit_normalized();
    if (b.is_zero()) return c * primitive_part(a).unit_normalized();
    return c * gcd_primitive(a, b);
}

inline LaurentPoly poly_minor_det(const PresentationMatrix& a, const std::vector<long>& rows,
                                  const std::vector<long>& cols) {
    long k = static_cast<long>(rows.size());
    if (k == 1) return a.at(rows[0], cols[0]);
    LaurentPoly det;
    std::vector<long> sub(cols.begin() + 1, cols.end());
    for (long i = 0; i < k; ++i) {
        if (a.at(rows[static_cast<std::size_t>(i)], cols[0]).is_zero()) continue;
        std::vector<long> rest;
        for (long j = 0; j < k; ++j)
            if (j != i) rest.push_back(rows[static_cast<std::size_t>(j)]);
        LaurentPoly term =
            a.at(rows[static_cast<std::size_t>(i)], cols[0]) * poly_minor_det(a, rest, sub);
        det = (i % 2 == 0) ? det + term : det - term;
    }
    return det;
}

}  // namespace detail

/// i-th characteristic polynomial: normalized gcd (integer content included)
/// of all (N-i) x (N-i) minors of the presentation matrix.
inline LaurentPoly characteristic_poly(const PresentationMatrix& a, long i) {
    long n = a.gens(), m = a.rels();
    if (i < 0 || i >= n) throw domain_error("characteristic polynomial index out of range");
    long k = n - i;
    if (k > 8) throw resource_error("minor rank too large for gcd enumeration");

    std::vector<long> rows(static_cast<std::size_t>(k)), cols(static_cast<std::size_t>(k));
    for (long j = 0; j < k; ++j) rows[static_cast<std::size_t>(j)] = j;
    LaurentPoly g;
    // iterate over k-subsets of columns for every k-subset of rows
    auto next_subset = [](std::vector<long>& s, long limit) {
        long k2 = static_cast<long>(s.size());
        long i2 = k2 - 1;
        while (i2 >= 0 && s[static_cast<std::size_t>(i2)] == limit - k2 + i2) --i2;
        if (i2 < 0) return false;
        long v = ++s[static_cast<std::size_t>(i2)];
        for (long j = i2 + 1; j < k2; ++j) s[static_cast<std::size_t>(j)] = v + j - i2;
        return true;
    };
    do {
        for (long j = 0; j < k; ++j) cols[static_cast<std::size_t>(j)] = j;
        do {
            g = detail::gcd_full(g, detail::poly_minor_det(a, rows, cols));
            if (!g.is_zero() && g.span() == 0 && abs(g.coeff(g.min_exp())) == 1) break;
        } while (next_subset(cols, m));
    } while (next_subset(rows, n));
    return g.is_zero() ? g : g.unit_normalized();
}

/// Reduced profile of the cyclic module: torsion of M/nu_r M with the delta
/// divisor when Delta(1) != 0 and the exact q-th root when Delta = (t-1)^q g.
inline ReducedTorsionProfile reduced_analysis(const LaurentPoly& delta, long r) {
    if (r < 1) throw domain_error("reduced_analysis needs r >= 1");
    if (delta.is_zero()) throw degenerate_input_error("zero polynomial presents a free module");
    ReducedTorsionProfile out;
    out.r = r;
    out.betti_reduced = betti({delta}, r, true);
    out.torsion_reduced = detail::torsion_formula_impl(delta, r, true);

    Rat at_one = evaluate_int(delta, 1);
    Int delta_at_one(at_one.get_num());  // integer: evaluation of an integer polynomial
    if (delta_at_one != 0) {
        Int br = torsion_formula(delta, r);
        Int q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), br.get_mpz_t(),
                    out.torsion_reduced.get_mpz_t());
        if (rem != 0)
            throw consistency_error("reduced torsion does not divide b_r at r = " +
                                    std::to_string(r));
        if (!mpz_divisible_p(delta_at_one.get_mpz_t(), q.get_mpz_t()))
            throw consistency_error("b_r / reduced torsion does not divide |Delta(1)|");
        out.delta = std::move(q);
    } else {
        // Delta = (t-1)^q g with q >= 1: the reduced torsion factors as
        // (delta'_r)^q * reduced torsion of g, with an exact integer root
        LaurentPoly tm1 = cyclotomic_poly(1);
        LaurentPoly g = delta;
        unsigned long q = 0;
        for (;;) {
            auto [ok, quo] = try_div_exact(g, tm1);
            if (!ok) break;
            g = std::move(quo);
            ++q;
        }
        Int tg = detail::torsion_formula_impl(g, r, true);
        Int ratio, rem;
        mpz_tdiv_qr(ratio.get_mpz_t(), rem.get_mpz_t(), out.torsion_reduced.get_mpz_t(),
                    tg.get_mpz_t());
        if (rem != 0)
            throw consistency_error("reduced torsion of g does not divide the full reduced torsion");
        Int root;
        if (mpz_root(root.get_mpz_t(), ratio.get_mpz_t(), q) == 0)
            throw consistency_error("reduced torsion ratio has no exact q-th root at r = " +
                                    std::to_string(r));
        out.delta_prime = std::move(root);
    }
    return out;
}

/// Prime-power specialization: for Delta = (t-1)^q g with p not dividing
/// g(1), the reduced Betti number at r = p^k is 0 and the p-part of the
/// reduced torsion is p^(qk). Both are verified against reduced_analysis.
inline std::pair<long, Int> prime_power_reduced_check(const LaurentPoly& delta, const Int& p,
                                                      unsigned long k) {
    if (k < 1) throw domain_error("prime_power_reduced_check needs k >= 1");
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 64) == 0)
        throw domain_error("p must be prime");
    if (delta.is_zero()) throw degenerate_input_error("zero polynomial presents a free module");

    LaurentPoly tm1 = cyclotomic_poly(1);
    LaurentPoly g = delta;
    unsigned long q = 0;
    for (;;) {
        auto [ok, quo] = try_div_exact(g, tm1);
        if (!ok) break;
        g = std::move(quo);
        ++q;
    }
    Int g1(evaluate_int(g, 1).get_num());
    if (mpz_divisible_p(g1.get_mpz_t(), p.get_mpz_t()))
        throw hypothesis_error("p divides g(1); the prime-power hypothesis fails");

    Int pk = pow_int(p, k);
    if (pk > Int(snf_dim_limit()))
        throw resource_error("p^k exceeds the block size guard");
    long r = static_cast<long>(pk.get_si());
    ReducedTorsionProfile red = reduced_analysis(delta, r);
    Int expected = pow_int(p, q * k);
    if (red.betti_reduced != 0)
        throw consistency_error("reduced Betti number is nonzero at r = p^k");
    if (p_component(red.torsion_reduced, p) != expected)
        throw consistency_error("reduced torsion p-part differs from p^(qk)");
    return {0, expected};
}

struct MobiusBettiReport {
    std::vector<long> phi_hat;          // phi_hat[i] for r = i + 1
    std::vector<unsigned long> divisor_set;  // d with phi_hat(d) > 0
};

/// Mobius inversion of a Betti sequence indexed r = 1..R:
/// phi_hat(r) = sum over d | r of mu(d) * beta_(r/d).
inline MobiusBettiReport mobius_invert_betti(const std::vector<long>& beta_seq) {
    MobiusBettiReport out;
    long rmax = static_cast<long>(beta_seq.size());
    for (long r = 1; r <= rmax; ++r) {
        long v = 0;
        for (unsigned long d : divisors_of(static_cast<unsigned long>(r)))
            v += mobius(d) * beta_seq[static_cast<std::size_t>(r / static_cast<long>(d) - 1)];
        out.phi_hat.push_back(v);
        if (v > 0) out.divisor_set.push_back(static_cast<unsigned long>(r));
    }
    return out;
}

/// Checks the division-sequence property along constant-Betti profiles:
/// returns the (r, s) pairs with r | s but b_r not dividing b_s.
inline std::vector<std::pair<long, long>> division_check(
    const std::vector<TorsionProfile>& profiles) {
    for (std::size_t i = 1; i < profiles.size(); ++i)
        if (profiles[i].betti != profiles[0].betti)
            throw domain_error("division_check needs a constant-Betti subsequence");
    std::vector<std::pair<long, long>> violations;
    for (const auto& lo : profiles)
        for (const auto& hi : profiles) {
            if (lo.r >= hi.r || hi.r % lo.r != 0) continue;
            if (!mpz_divisible_p(hi.torsion.get_mpz_t(), lo.torsion.get_mpz_t()))
                violations.emplace_back(lo.r, hi.r);
        }
    return violations;
}

}  // namespace augtor
