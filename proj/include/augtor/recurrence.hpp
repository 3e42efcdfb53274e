#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "exact_linear.hpp"
#include "laurent.hpp"
#include "resultants.hpp"
#include "torsion.hpp"

// Linear recurrences for resultant sequences R(f, r) = Res(f, t^r - 1) and
// for whole torsion sequences b_r.  Everything is exact: the characteristic
// polynomials come from integer compound matrices, never from numerical roots.

namespace augtor {

enum class SignMode { constant, alternating };

/// c_0 u_{r+m} + c_1 u_{r+m-1} + ... + c_m u_r = 0 with u_r = b_r = |R(f, r)|.
/// coefficients holds the characteristic polynomial, leading term first.
/// sign_mode relates the signed sequence R(f, r) to b_r: under "constant" it
/// obeys the same polynomial, under "alternating" the mirror with every other
/// coefficient negated.  seed holds the m terms starting at index seed_start.
struct RecurrenceSpec {
    std::vector<Int> coefficients;
    SignMode sign_mode = SignMode::constant;
    std::vector<Int> seed;
    long seed_start = 0;

    long order() const { return static_cast<long>(coefficients.size()) - 1; }
};

namespace detail {

// The compound matrices reach dimension C(d, d/2) and the characteristic
// polynomial costs a fourth power of that.
inline void check_compound_size(long d) {
    Int c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(d),
                 static_cast<unsigned long>(d / 2));
    if (c > 128)
        throw resource_error("degree " + std::to_string(d) +
                             " compound matrices exceed the supported size");
}

inline std::vector<std::vector<int>> k_subsets(int d, int k) {
    std::vector<std::vector<int>> out;
    if (k > d) return out;
    std::vector<int> cur(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
    for (;;) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == d - k + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

/// c0 * Lambda^k(companion(f0 / c0)) for ordinary f0 with coefficients a:
/// an integer matrix whose eigenvalues are c0 times the k-fold root products
/// of f0.  Every k x k minor of the companion uses at most one entry of the
/// dense bottom row, so the scaled minors collapse to 0, c0, or +-a_c.
inline IntMatrix scaled_compound(const std::vector<Int>& a, int k) {
    int d = static_cast<int>(a.size()) - 1;
    const Int& c0 = a.back();
    auto subs = k_subsets(d, k);
    long n = static_cast<long>(subs.size());
    IntMatrix b(n, n);
    for (long si = 0; si < n; ++si) {
        const auto& s = subs[static_cast<std::size_t>(si)];
        bool dense = !s.empty() && s.back() == d - 1;
        for (long ti = 0; ti < n; ++ti) {
            const auto& t = subs[static_cast<std::size_t>(ti)];
            if (!dense) {
                bool shift = true;
                for (int i = 0; i < k && shift; ++i)
                    shift = (t[static_cast<std::size_t>(i)] ==
                             s[static_cast<std::size_t>(i)] + 1);
                if (shift) b.at(si, ti) = c0;
                continue;
            }
            // Unit rows pin the columns s[i] + 1; the dense row takes the one
            // column left over, with the parity of its position as sign.
            std::vector<char> hit(static_cast<std::size_t>(k), 0);
            bool ok = true;
            for (int i = 0; ok && i + 1 < k; ++i) {
                int want = s[static_cast<std::size_t>(i)] + 1;
                ok = false;
                for (int j = 0; j < k; ++j) {
                    if (t[static_cast<std::size_t>(j)] == want) {
                        hit[static_cast<std::size_t>(j)] = 1;
                        ok = true;
                        break;
                    }
                }
            }
            if (!ok) continue;
            int pos = 0;
            while (hit[static_cast<std::size_t>(pos)]) ++pos;
            Int v = -a[static_cast<std::size_t>(t[static_cast<std::size_t>(pos)])];
            if ((k - 1 - pos) % 2 != 0) v = -v;
            b.at(si, ti) = v;
        }
    }
    return b;
}

inline LaurentPoly poly_lcm_monic(const LaurentPoly& a, const LaurentPoly& b) {
    return div_exact(a * b, gcd_primitive(a, b));
}

/// Monic integer annihilator of r -> Res(f0, t^r - 1), f0 ordinary: the lcm
/// of the characteristic polynomials of the scaled compounds, whose roots
/// run over c0 times the subset products of the roots of f0.
inline LaurentPoly signed_resultant_charpoly(const LaurentPoly& f0) {
    long d = f0.max_exp();
    if (d == 0) return LaurentPoly({Int(-f0.leading_coeff()), Int(1)}, 0);
    check_compound_size(d);
    LaurentPoly acc(1);
    for (long k = 0; k <= d; ++k)
        acc = poly_lcm_monic(acc, charpoly(scaled_compound(f0.coeffs(), static_cast<int>(k))));
    return acc;
}

/// Sign of Res(f0, t^r - 1) where nonzero is eps * delta^r with
/// delta = sign(lc) * (-1)^(number of real roots below -1).  That parity is
/// two exact sign evaluations once any (t + 1)^k factor is stripped.
inline SignMode detect_sign_mode(LaurentPoly f0) {
    const LaurentPoly t_plus_one({Int(1), Int(1)}, 0);
    while (evaluate_int(f0, -1) == 0) f0 = div_exact(f0, t_plus_one);
    int lc = sgn(f0.leading_coeff());
    int at_minus_inf = (f0.span() % 2 != 0) ? -lc : lc;
    bool odd_below = at_minus_inf != sgn(evaluate_int(f0, -1));
    return (odd_below ? -lc : lc) < 0 ? SignMode::alternating : SignMode::constant;
}

/// (-1)^m p(-t): negates every other coefficient, monic stays monic.
inline LaurentPoly alternate_flip(const LaurentPoly& p) {
    if (p.is_zero()) return p;
    long m = p.max_exp();
    std::vector<Int> c(static_cast<std::size_t>(m) + 1);
    for (long j = 0; j <= m; ++j) {
        c[static_cast<std::size_t>(j)] = p.coeff(j);
        if ((m - j) % 2 != 0) c[static_cast<std::size_t>(j)] = -c[static_cast<std::size_t>(j)];
    }
    return LaurentPoly(std::move(c), 0);
}

/// Annihilator of b_r = |Res(f0, t^r - 1)|: the signed characteristic
/// polynomial, mirrored when the sign pattern alternates.
inline LaurentPoly abs_resultant_charpoly(const LaurentPoly& f0, SignMode mode) {
    LaurentPoly p = signed_resultant_charpoly(f0);
    return mode == SignMode::alternating ? alternate_flip(p) : p;
}

/// Monic q -> monic polynomial whose roots are the e-th powers of the roots
/// of q, multiplicities kept.
inline LaurentPoly charpoly_power(const LaurentPoly& q, long e) {
    if (e == 1) return q;
    return charpoly(mat_pow(companion_of(q), static_cast<unsigned long>(e)));
}

/// q(t^gamma).
inline LaurentPoly stretch(const LaurentPoly& q, long gamma) {
    if (gamma == 1 || q.is_zero()) return q;
    std::vector<Int> c(static_cast<std::size_t>(q.max_exp() * gamma) + 1, Int(0));
    for (long j = q.min_exp(); j <= q.max_exp(); ++j)
        c[static_cast<std::size_t>(j * gamma)] = q.coeff(j);
    return LaurentPoly(std::move(c), 0);
}

}  // namespace detail

/// f_0 = t - 1 up through f_d: integer-cleared characteristic polynomials of
/// the compounds of companion(f / lc(f)); the roots of f_k are the k-fold
/// products of roots of f.
inline std::vector<LaurentPoly> lehmer_factors(const LaurentPoly& f) {
    if (f.is_zero() || f.span() < 1)
        throw domain_error("Lehmer factors need a nonconstant polynomial");
    LaurentPoly f0 = f.shifted(-f.min_exp());
    long d = f0.max_exp();
    detail::check_compound_size(d);
    const Int& c0 = f0.leading_coeff();
    std::vector<LaurentPoly> out;
    out.reserve(static_cast<std::size_t>(d) + 1);
    for (long k = 0; k <= d; ++k) {
        LaurentPoly gk = charpoly(detail::scaled_compound(f0.coeffs(), static_cast<int>(k)));
        // gk has the c0-weighted products as roots; substituting t -> c0 t and
        // taking the primitive part drops the weight again.
        std::vector<Int> c(static_cast<std::size_t>(gk.max_exp()) + 1);
        Int w(1);
        for (long j = 0; j <= gk.max_exp(); ++j) {
            c[static_cast<std::size_t>(j)] = gk.coeff(j) * w;
            w *= c0;
        }
        LaurentPoly fk = LaurentPoly(std::move(c), 0).primitive_part();
        if (fk.leading_coeff() < 0) fk = -fk;
        out.push_back(fk);
    }
    return out;
}

/// Recurrence for b_r = |Res(f, t^r - 1)| (the unit part of f is ignored):
/// characteristic polynomial lcm of the scaled compound characteristic
/// polynomials, mirrored if the resultant signs alternate.  Seeds start at 0
/// when lc = +-1 and at 1 otherwise, with R(f, 0) = 0.
inline RecurrenceSpec recurrence_spec(const LaurentPoly& f) {
    if (f.is_zero() || f.span() < 1)
        throw domain_error("recurrence needs a nonconstant polynomial");
    LaurentPoly f0 = f.shifted(-f.min_exp());
    SignMode mode = detail::detect_sign_mode(f0);
    LaurentPoly p = detail::abs_resultant_charpoly(f0, mode);
    RecurrenceSpec spec;
    spec.sign_mode = mode;
    long m = p.max_exp();
    spec.coefficients.resize(static_cast<std::size_t>(m) + 1);
    for (long j = 0; j <= m; ++j)
        spec.coefficients[static_cast<std::size_t>(j)] = p.coeff(m - j);
    spec.seed_start = (abs(f0.leading_coeff()) == 1) ? 0 : 1;
    spec.seed.reserve(static_cast<std::size_t>(m));
    for (long r = spec.seed_start; r < spec.seed_start + m; ++r) {
        if (r == 0)
            spec.seed.emplace_back(0);  // Res(f, t^0 - 1) = Res(f, 0)
        else
            spec.seed.push_back(abs(res_cyclic(f0, r)));
    }
    return spec;
}

/// Forward iteration; every step divides exactly by the leading coefficient.
inline Int eval_recurrence(const RecurrenceSpec& spec, long r) {
    long m = spec.order();
    if (m < 1 || spec.coefficients.front() == 0)
        throw degenerate_input_error("recurrence needs order >= 1 and a nonzero leading coefficient");
    if (static_cast<long>(spec.seed.size()) != m)
        throw degenerate_input_error("recurrence seed must hold exactly order-many terms");
    if (r < spec.seed_start) throw domain_error("evaluation before the seed range");
    if (r < spec.seed_start + m)
        return spec.seed[static_cast<std::size_t>(r - spec.seed_start)];
    std::vector<Int> w(spec.seed.begin(), spec.seed.end());
    for (long n = spec.seed_start + m; n <= r; ++n) {
        Int next(0);
        for (long i = 1; i <= m; ++i)
            next -= spec.coefficients[static_cast<std::size_t>(i)] *
                    w[static_cast<std::size_t>(m - i)];
        if (spec.coefficients.front() != 1) {
            Int q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), next.get_mpz_t(),
                        spec.coefficients.front().get_mpz_t());
            if (rem != 0) throw consistency_error("recurrence step is not integral");
            next = q;
        }
        w.erase(w.begin());
        w.push_back(std::move(next));
    }
    return w.back();
}

/// Recurrence for the whole torsion sequence b_r of the cyclic module on
/// delta.  With delta = (cyclotomic part) * g, gamma the lcm of the
/// cyclotomic orders and M = sum phi(d)(e_d - 1), the characteristic
/// polynomial is P(t) = p(t^gamma) * rad(t^gamma)^M where p annihilates
/// |Res(g, t^r - 1)| and rad is its squarefree radical: the periodic
/// cyclotomic contributions are constant on residue classes mod gamma and
/// the repeated factors contribute one power of r each.  Seeds come from
/// the Smith-form route, not from the resultant formula.
inline RecurrenceSpec torsion_recurrence(const LaurentPoly& delta) {
    if (delta.is_zero()) throw degenerate_input_error("torsion recurrence of zero");
    CycloFactorization cf = cyclo_factorize(delta);
    long gamma = static_cast<long>(cf.gamma);
    LaurentPoly g0 = cf.g.shifted(-cf.g.min_exp());
    LaurentPoly p = detail::abs_resultant_charpoly(g0, detail::detect_sign_mode(g0));
    LaurentPoly rad = div_exact(p, gcd_primitive(p, LaurentPoly(detail::zderiv(p.coeffs()), 0)));
    LaurentPoly combined = detail::charpoly_power(p, gamma);
    LaurentPoly rad_power = detail::charpoly_power(rad, gamma);
    for (unsigned long i = 0; i < cf.weight; ++i) combined = combined * rad_power;
    LaurentPoly cp = detail::stretch(combined, gamma);
    long deg = cp.max_exp();
    if (deg > 120)
        throw resource_error("torsion recurrence order " + std::to_string(deg) +
                             " exceeds the supported bound");
    PresentationMatrix cyc = PresentationMatrix::cyclic(delta);
    RecurrenceSpec spec;
    spec.sign_mode = SignMode::constant;
    spec.seed_start = 1;
    spec.coefficients.resize(static_cast<std::size_t>(deg) + 1);
    for (long j = 0; j <= deg; ++j)
        spec.coefficients[static_cast<std::size_t>(j)] = cp.coeff(deg - j);
    spec.seed.reserve(static_cast<std::size_t>(deg));
    for (long r = 1; r <= deg; ++r) spec.seed.push_back(torsion_snf(cyc, r).torsion);
    return spec;
}

/// b_r = c * r^m * |Res(g, t^r - 1)| on one residue class mod gamma.
struct StructureConstants {
    Rat c;
    long m = 0;
};

/// m is read off the cyclotomic multiplicities (orders dividing the class,
/// where every order divides 0); c is fitted from the probes and must come
/// out identical for each.
inline StructureConstants structure_constants(const LaurentPoly& delta, long cls,
                                              const std::vector<long>& probes) {
    if (delta.is_zero()) throw degenerate_input_error("structure constants of zero");
    if (probes.empty()) throw domain_error("structure constants need at least one probe");
    CycloFactorization cf = cyclo_factorize(delta);
    long gamma = static_cast<long>(cf.gamma);
    long cm = ((cls % gamma) + gamma) % gamma;
    StructureConstants out;
    for (const auto& [d, e] : cf.factors)
        if (cm % static_cast<long>(d) == 0)
            out.m += static_cast<long>(euler_phi(d)) * (static_cast<long>(e) - 1);
    LaurentPoly g0 = cf.g.shifted(-cf.g.min_exp());
    bool first = true;
    for (long r : probes) {
        if (r < 1) throw domain_error("structure constant probes must be positive");
        if (r % gamma != cm)
            throw domain_error("probe " + std::to_string(r) + " is not in residue class " +
                               std::to_string(cm) + " mod " + std::to_string(gamma));
        Int scale = pow_int(Int(r), static_cast<unsigned long>(out.m)) *
                    abs(res_cyclic(g0, r));
        Rat fitted = Rat(torsion_formula(delta, r)) / Rat(scale);
        if (first) {
            out.c = fitted;
            first = false;
        } else if (out.c != fitted) {
            throw consistency_error("fitted structure constant varies across probes");
        }
    }
    return out;
}

}  // namespace augtor
