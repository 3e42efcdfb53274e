#pragma once

#include <utility>
#include <vector>

#include "augtor/exact_linear.hpp"
#include "augtor/laurent.hpp"

namespace augtor {

namespace detail {

// Rational content c > 0 with a/c integer and primitive.
inline Rat qcontent_abs(const std::vector<Rat>& a) {
    Int num = 0, den = 1;
    for (const auto& x : a) {
        num = gcd(num, Int(x.get_num()));
        den = lcm(den, Int(x.get_den()));
    }
    if (num == 0) num = 1;
    return Rat(num, den);
}

// t^r mod b over Q by binary powering; b must have degree >= 1.
inline std::vector<Rat> q_powmod_t(unsigned long r, const std::vector<Rat>& b) {
    std::vector<Rat> acc{Rat(1)};
    std::vector<Rat> cur = qdivmod({Rat(0), Rat(1)}, b).second;
    while (r > 0) {
        if (r & 1) acc = qdivmod(qmul(acc, cur), b).second;
        r >>= 1;
        if (r) cur = qdivmod(qmul(cur, cur), b).second;
    }
    return acc;
}

}  // namespace detail

/// Res(f, g) = lc(f)^deg(g) * prod of g over the roots of f, for ordinary
/// integer polynomials (min_exp >= 0; powers of t count as roots at zero).
/// Computed by a pseudo-remainder sequence with exact sign and content
/// bookkeeping; Res(f, 0) = Res(0, g) = 0.
inline Int resultant(const LaurentPoly& f, const LaurentPoly& g) {
    if (f.is_zero() || g.is_zero()) return 0;
    if (f.min_exp() < 0 || g.min_exp() < 0)
        throw domain_error("resultant needs ordinary polynomials, not Laurent units");
    auto pad = [](const LaurentPoly& p) {
        std::vector<Int> v(static_cast<std::size_t>(p.min_exp()), Int(0));
        v.insert(v.end(), p.coeffs().begin(), p.coeffs().end());
        return v;
    };
    std::vector<Int> a = pad(f), b = pad(g);
    Rat acc(1);
    for (;;) {
        long n = detail::zdeg(a), m = detail::zdeg(b);
        if (m == 0) {
            acc *= Rat(pow_int(b[0], static_cast<unsigned long>(n)));
            break;
        }
        if (n == 0) {
            acc *= Rat(pow_int(a[0], static_cast<unsigned long>(m)));
            break;
        }
        if (n < m) {
            std::swap(a, b);
            if ((n & 1) && (m & 1)) acc = -acc;
            continue;
        }
        // lc(b)^(n-m+1) a = q b + r with deg r < m, so
        // Res(a, b) = (-1)^nm lc(b)^(n - deg r - m(n-m+1)) Res(b, r)
        std::vector<Int> r = detail::zprem(a, b);
        if (detail::zis_zero(r)) return 0;
        if ((n & 1) && (m & 1)) acc = -acc;
        long dr = detail::zdeg(r);
        long e = n - dr - m * (n - m + 1);
        Int lcb_pow = pow_int(detail::zlc(b), static_cast<unsigned long>(e >= 0 ? e : -e));
        if (e >= 0)
            acc *= Rat(lcb_pow);
        else
            acc /= Rat(lcb_pow);
        Int cont = detail::zcontent(r);
        if (cont > 1) {
            for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), cont.get_mpz_t());
            acc *= Rat(pow_int(cont, static_cast<unsigned long>(m)));
        }
        a = std::move(b);
        b = std::move(r);
    }
    if (acc.get_den() != 1) throw consistency_error("resultant accumulated a non-integer value");
    return acc.get_num();
}

namespace detail {

// Res(f0, h) for f0 integer (min_exp 0, deg >= 1) and h rational nonzero.
inline Rat res_against_rational(const LaurentPoly& f0, const std::vector<Rat>& h) {
    Rat c = qcontent_abs(h);
    std::vector<Int> hz;
    hz.reserve(h.size());
    for (const auto& x : h) {
        Rat y = x / c;
        hz.push_back(Int(y.get_num()));  // exact by construction
    }
    ztrim(hz);
    Rat out = Rat(resultant(f0, LaurentPoly(std::move(hz), 0)));
    long d = f0.span();
    Rat cp(1);
    for (long i = 0; i < d; ++i) cp *= c;
    return out * cp;
}

}  // namespace detail

/// Res(t^r - 1, f) = prod of f over the r-th roots of unity. Accepts Laurent
/// input: f = t^k f0 contributes (prod of the roots)^k = (-1)^((r+1)k).
/// For large r this reduces t^r mod f0 by binary powering instead of running
/// the full remainder sequence against t^r - 1.
inline Int res_cyclic(const LaurentPoly& f, long r) {
    if (r < 1) throw domain_error("res_cyclic needs r >= 1");
    if (f.is_zero()) return 0;
    long k = f.min_exp();
    LaurentPoly f0 = f.shifted(-k);
    long d = f0.span();
    bool twist = ((r + 1) % 2 != 0) && (k % 2 != 0);
    Int base;
    if (d == 0) {
        base = pow_int(f0.coeff(0), static_cast<unsigned long>(r));
    } else if (r <= d) {
        base = resultant(cyclic_poly(r), f0);
    } else {
        std::vector<Rat> fq;
        for (long e = 0; e <= d; ++e) fq.push_back(Rat(f0.coeff(e)));
        std::vector<Rat> h = detail::q_powmod_t(static_cast<unsigned long>(r), fq);
        h = detail::qsub(h, {Rat(1)});  // (t^r - 1) mod f0
        if (h.empty()) return 0;
        // Res(f0, t^r-1) = lc(f0)^(r - deg h) Res(f0, h); flip (-1)^(rd) to swap
        Rat acc = detail::res_against_rational(f0, h);
        long e = r - detail::qdeg(h);
        Int lcp = pow_int(f0.leading_coeff(), static_cast<unsigned long>(e));
        acc *= Rat(lcp);
        if ((r % 2 != 0) && (d % 2 != 0)) acc = -acc;
        if (acc.get_den() != 1) throw consistency_error("res_cyclic produced a non-integer");
        base = acc.get_num();
    }
    return twist ? Int(-base) : base;
}

/// Res(nu_r, f) = prod of f over the nontrivial r-th roots of unity, with the
/// same Laurent convention: the unit t^k contributes (-1)^((r-1)k).
inline Int res_nu(const LaurentPoly& f, long r) {
    if (r < 1) throw domain_error("res_nu needs r >= 1");
    if (f.is_zero()) return 0;
    if (r == 1) return 1;
    long k = f.min_exp();
    LaurentPoly f0 = f.shifted(-k);
    long d = f0.span();
    bool twist = ((r - 1) % 2 != 0) && (k % 2 != 0);
    Int base;
    if (d == 0) {
        base = pow_int(f0.coeff(0), static_cast<unsigned long>(r - 1));
    } else if (r - 1 <= d) {
        base = resultant(nu(r), f0);
    } else {
        // nu_r mod f0 = ((t^r - 1) mod (t-1) f0) / (t-1), degree < deg f0
        std::vector<Rat> fq;
        for (long e = 0; e <= d; ++e) fq.push_back(Rat(f0.coeff(e)));
        std::vector<Rat> mod = detail::qmul(fq, {Rat(-1), Rat(1)});
        std::vector<Rat> a = detail::q_powmod_t(static_cast<unsigned long>(r), mod);
        a = detail::qsub(a, {Rat(1)});
        auto [h, rem] = detail::qdivmod(std::move(a), {Rat(-1), Rat(1)});
        if (!rem.empty()) throw consistency_error("nu reduction left a remainder");
        if (h.empty()) return 0;
        Rat acc = detail::res_against_rational(f0, h);
        long e = (r - 1) - detail::qdeg(h);
        acc *= Rat(pow_int(f0.leading_coeff(), static_cast<unsigned long>(e)));
        if (((r - 1) % 2 != 0) && (d % 2 != 0)) acc = -acc;
        if (acc.get_den() != 1) throw consistency_error("res_nu produced a non-integer");
        base = acc.get_num();
    }
    return twist ? Int(-base) : base;
}

/// Independent route: det f(C_r) over the block substitution. Equal to
/// res_cyclic(f, r) because the eigenvalues of C_r are the r-th roots of unity.
inline Int res_cyclic_companion(const LaurentPoly& f, long r) {
    if (f.is_zero()) return 0;
    return bareiss_det(substitute_blocks(PresentationMatrix::cyclic(f), r));
}

}  // namespace augtor
