#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "augtor/errors.hpp"

namespace augtor {

using Int = mpz_class;
using Rat = mpq_class;

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/// Largest power of the prime p dividing n (n nonzero).
inline Int p_component(const Int& n, const Int& p) {
    if (n == 0) throw domain_error("p-component of zero");
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 64) == 0)
        throw domain_error("p-component needs a prime p");
    Int rest;
    unsigned long v =
        static_cast<unsigned long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
    return pow_int(p, v);
}

namespace detail {

// Ordinary polynomials as trimmed ascending coefficient vectors.
// An empty vector is the zero polynomial.

inline void ztrim(std::vector<Int>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline bool zis_zero(const std::vector<Int>& a) { return a.empty(); }

inline long zdeg(const std::vector<Int>& a) {
    return static_cast<long>(a.size()) - 1;  // -1 for the zero polynomial
}

inline const Int& zlc(const std::vector<Int>& a) {
    assert(!a.empty());
    return a.back();
}

inline std::vector<Int> zadd(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    ztrim(r);
    return r;
}

inline std::vector<Int> zneg(std::vector<Int> a) {
    for (auto& c : a) c = -c;
    return a;
}

inline std::vector<Int> zsub(const std::vector<Int>& a, const std::vector<Int>& b) {
    return zadd(a, zneg(b));
}

inline std::vector<Int> zmul(const std::vector<Int>& a, const std::vector<Int>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Int> r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    ztrim(r);
    return r;
}

inline std::vector<Int> zscale(std::vector<Int> a, const Int& c) {
    if (c == 0) return {};
    for (auto& x : a) x *= c;
    return a;
}

inline Int zcontent(const std::vector<Int>& a) {
    Int g = 0;
    for (const auto& c : a) g = gcd(g, c);
    return g;  // 0 for the zero polynomial, positive otherwise
}

inline std::vector<Int> zprimitive(std::vector<Int> a) {
    Int g = zcontent(a);
    if (g > 1)
        for (auto& c : a) c /= g;
    return a;
}

inline std::vector<Int> zderiv(const std::vector<Int>& a) {
    if (a.size() <= 1) return {};
    std::vector<Int> r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = Int(static_cast<long>(i)) * a[i];
    ztrim(r);
    return r;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r with deg r < deg b.
inline std::vector<Int> zprem(std::vector<Int> a, const std::vector<Int>& b) {
    assert(!b.empty());
    long m = zdeg(b);
    long n = zdeg(a);
    if (n < m) {
        // lc^(n-m+1) would be a negative power; the convention here is the
        // plain remainder, which callers only hit with n >= m anyway.
        return a;
    }
    const Int& d = zlc(b);
    long steps = n - m + 1;
    while (!a.empty() && zdeg(a) >= m) {
        Int s = zlc(a);
        long k = zdeg(a) - m;
        // a = d*a - s * t^k * b
        std::vector<Int> r(std::max(a.size(), b.size() + static_cast<std::size_t>(k)), Int(0));
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = d * a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i + static_cast<std::size_t>(k)] -= s * b[i];
        ztrim(r);
        a = std::move(r);
        --steps;
    }
    if (steps > 0) {
        Int f = pow_int(d, static_cast<unsigned long>(steps));
        for (auto& c : a) c *= f;
    }
    return a;
}

// Primitive part of the polynomial gcd (positive leading coefficient),
// computed by a content-stripped pseudo-remainder sequence.
inline std::vector<Int> zgcd_primitive(std::vector<Int> a, std::vector<Int> b) {
    a = zprimitive(std::move(a));
    b = zprimitive(std::move(b));
    if (a.empty()) std::swap(a, b);
    if (b.empty()) {
        if (!a.empty() && zlc(a) < 0) a = zneg(std::move(a));
        return a;
    }
    if (zdeg(a) < zdeg(b)) std::swap(a, b);
    while (!b.empty()) {
        std::vector<Int> r = zprimitive(zprem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    if (zlc(a) < 0) a = zneg(std::move(a));
    return a;
}

// Rational polynomials, same storage conventions.

inline void qtrim(std::vector<Rat>& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

inline long qdeg(const std::vector<Rat>& a) { return static_cast<long>(a.size()) - 1; }

inline std::vector<Rat> qadd(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    qtrim(r);
    return r;
}

inline std::vector<Rat> qneg(std::vector<Rat> a) {
    for (auto& c : a) c = -c;
    return a;
}

inline std::vector<Rat> qsub(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    return qadd(a, qneg(b));
}

inline std::vector<Rat> qmul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    qtrim(r);
    return r;
}

inline std::vector<Rat> qscale(std::vector<Rat> a, const Rat& c) {
    if (sgn(c) == 0) return {};
    for (auto& x : a) x *= c;
    return a;
}

// Division with remainder over Q; returns {quotient, remainder}.
inline std::pair<std::vector<Rat>, std::vector<Rat>> qdivmod(std::vector<Rat> a,
                                                             const std::vector<Rat>& b) {
    if (b.empty()) throw degenerate_input_error("polynomial division by zero");
    long m = qdeg(b);
    std::vector<Rat> q;
    if (qdeg(a) >= m) q.assign(static_cast<std::size_t>(qdeg(a) - m) + 1, Rat(0));
    while (!a.empty() && qdeg(a) >= m) {
        long k = qdeg(a) - m;
        Rat s = a.back() / b.back();
        q[static_cast<std::size_t>(k)] = s;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + static_cast<std::size_t>(k)] -= s * b[i];
        qtrim(a);
    }
    qtrim(q);
    return {std::move(q), std::move(a)};
}

inline std::vector<Rat> qmonic(std::vector<Rat> a) {
    if (a.empty()) return a;
    Rat inv = 1 / a.back();
    for (auto& c : a) c *= inv;
    return a;
}

inline std::vector<Rat> qgcd_monic(std::vector<Rat> a, std::vector<Rat> b) {
    while (!b.empty()) {
        auto [q, r] = qdivmod(std::move(a), b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return qmonic(std::move(a));
}

inline std::vector<Rat> q_from_z(const std::vector<Int>& a) {
    std::vector<Rat> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rat(a[i]);
    return r;
}

}  // namespace detail

/// Integer Laurent polynomial in t, coefficients stored densely in ascending
/// exponent order starting at min_exp(). Always normalized: first and last
/// stored coefficients are nonzero. The zero polynomial stores nothing and
/// has min_exp() == 0.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long constant) : coeffs_{Int(constant)}, min_exp_(0) { normalize(); }
    explicit LaurentPoly(Int constant) : coeffs_{std::move(constant)}, min_exp_(0) { normalize(); }
    LaurentPoly(std::vector<Int> coeffs, long min_exp)
        : coeffs_(std::move(coeffs)), min_exp_(min_exp) {
        normalize();
    }

    static LaurentPoly monomial(Int c, long e) { return LaurentPoly({std::move(c)}, e); }
    static LaurentPoly t(long e = 1) { return monomial(1, e); }

    bool is_zero() const { return coeffs_.empty(); }
    long min_exp() const { return min_exp_; }
    long max_exp() const {
        assert(!coeffs_.empty());
        return min_exp_ + static_cast<long>(coeffs_.size()) - 1;
    }
    /// Exponent span; degree of the unit-normalized polynomial. -1 for zero.
    long span() const { return static_cast<long>(coeffs_.size()) - 1; }

    const std::vector<Int>& coeffs() const { return coeffs_; }

    Int coeff(long e) const {
        if (coeffs_.empty() || e < min_exp_ || e > max_exp()) return 0;
        return coeffs_[static_cast<std::size_t>(e - min_exp_)];
    }

    const Int& leading_coeff() const {
        assert(!coeffs_.empty());
        return coeffs_.back();
    }

    LaurentPoly shifted(long k) const {  // multiply by t^k
        if (is_zero()) return {};
        LaurentPoly r = *this;
        r.min_exp_ += k;
        return r;
    }

    /// Same polynomial times the unit +-t^k: min_exp 0, positive leading coeff.
    LaurentPoly unit_normalized() const {
        if (is_zero()) return {};
        LaurentPoly r = *this;
        r.min_exp_ = 0;
        if (r.coeffs_.back() < 0)
            for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    Int content() const { return detail::zcontent(coeffs_); }

    LaurentPoly primitive_part() const {
        if (is_zero()) return {};
        return LaurentPoly(detail::zprimitive(coeffs_), min_exp_);
    }

    bool is_reciprocal() const {
        std::size_t n = coeffs_.size();
        for (std::size_t i = 0; i < n / 2; ++i)
            if (coeffs_[i] != coeffs_[n - 1 - i]) return false;
        return true;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        long lo = std::min(a.min_exp_, b.min_exp_);
        long hi = std::max(a.max_exp(), b.max_exp());
        std::vector<Int> c(static_cast<std::size_t>(hi - lo + 1), Int(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            c[static_cast<std::size_t>(a.min_exp_ - lo) + i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
            c[static_cast<std::size_t>(b.min_exp_ - lo) + i] += b.coeffs_[i];
        return LaurentPoly(std::move(c), lo);
    }

    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r = a;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        return LaurentPoly(detail::zmul(a.coeffs_, b.coeffs_), a.min_exp_ + b.min_exp_);
    }

    friend LaurentPoly operator*(const Int& c, const LaurentPoly& a) {
        return LaurentPoly(detail::zscale(a.coeffs_, c), a.min_exp_);
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.min_exp_ == b.min_exp_ && a.coeffs_ == b.coeffs_;
    }

private:
    void normalize() {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            min_exp_ = 0;
            return;
        }
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
            min_exp_ += static_cast<long>(lead);
        }
        detail::ztrim(coeffs_);
    }

    std::vector<Int> coeffs_;
    long min_exp_ = 0;
};

/// Canonical text form: terms in descending exponent, compact signs,
/// unit coefficients omitted, e.g. "t^2-3t+1" or "t^-1+2".
inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& f) {
    if (f.is_zero()) return os << "0";
    bool first = true;
    for (long e = f.max_exp(); e >= f.min_exp(); --e) {
        Int c = f.coeff(e);
        if (c == 0) continue;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? "-" : "+");
        }
        Int a = abs(c);
        if (a != 1 || e == 0) os << a.get_str();
        if (e != 0) {
            os << "t";
            if (e != 1) os << "^" << e;
        }
    }
    return os;
}

inline std::string to_string(const LaurentPoly& f) {
    std::ostringstream os;
    os << f;
    return os.str();
}

/// 1 + t + ... + t^(r-1); nu(1) = 1.
inline LaurentPoly nu(long r) {
    if (r < 1) throw domain_error("nu(r) needs r >= 1");
    return LaurentPoly(std::vector<Int>(static_cast<std::size_t>(r), Int(1)), 0);
}

/// t^r - 1 for r >= 1.
inline LaurentPoly cyclic_poly(long r) {
    if (r < 1) throw domain_error("t^r-1 needs r >= 1");
    std::vector<Int> c(static_cast<std::size_t>(r) + 1, Int(0));
    c.front() = -1;
    c.back() = 1;
    return LaurentPoly(std::move(c), 0);
}

inline Int content(const LaurentPoly& f) { return f.content(); }

inline LaurentPoly primitive_part(const LaurentPoly& f) { return f.primitive_part(); }

/// Primitive gcd in Z[t, 1/t]: content 1, min_exp 0, positive leading
/// coefficient. gcd(f, 0) is the normalized primitive part of f.
inline LaurentPoly gcd_primitive(const LaurentPoly& f, const LaurentPoly& g) {
    if (f.is_zero() && g.is_zero())
        throw degenerate_input_error("gcd of two zero polynomials");
    std::vector<Int> r = detail::zgcd_primitive(f.coeffs(), g.coeffs());
    return LaurentPoly(std::move(r), 0);
}

/// Try f / g; empty result when g does not divide f with integer quotient.
inline std::pair<bool, LaurentPoly> try_div_exact(const LaurentPoly& f, const LaurentPoly& g) {
    if (g.is_zero()) throw degenerate_input_error("division by zero polynomial");
    if (f.is_zero()) return {true, LaurentPoly{}};
    auto [q, rem] = detail::qdivmod(detail::q_from_z(f.coeffs()), detail::q_from_z(g.coeffs()));
    if (!rem.empty()) return {false, LaurentPoly{}};
    std::vector<Int> qi(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i].get_den() != 1) return {false, LaurentPoly{}};
        qi[i] = q[i].get_num();
    }
    return {true, LaurentPoly(std::move(qi), f.min_exp() - g.min_exp())};
}

inline LaurentPoly div_exact(const LaurentPoly& f, const LaurentPoly& g) {
    auto [ok, q] = try_div_exact(f, g);
    if (!ok)
        throw divisibility_error("inexact polynomial division: " + to_string(g) +
                                 " does not divide " + to_string(f));
    return q;
}

inline bool divides(const LaurentPoly& g, const LaurentPoly& f) {
    return try_div_exact(f, g).first;
}

/// Exact value f(x) as a rational; x != 0 required when min_exp < 0.
inline Rat evaluate_int(const LaurentPoly& f, const Int& x) {
    if (f.is_zero()) return Rat(0);
    if (x == 0 && f.min_exp() < 0)
        throw domain_error("evaluation at 0 with negative exponents present");
    Rat acc(0);
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        acc *= Rat(x);
        acc += Rat(f.coeffs()[i]);
    }
    long e = f.min_exp();
    if (e > 0) {
        acc *= Rat(pow_int(x, static_cast<unsigned long>(e)));
    } else if (e < 0) {
        Rat d(pow_int(x, static_cast<unsigned long>(-e)));
        acc /= d;
    }
    return acc;
}

/// f = content * t^exponent * prod parts[i].first ^ parts[i].second,
/// parts primitive, squarefree, positive leading coefficient, pairwise coprime
/// (Yun's algorithm).
struct SquarefreeDecomposition {
    Int content;
    long exponent = 0;
    std::vector<std::pair<LaurentPoly, unsigned>> parts;
};

inline SquarefreeDecomposition squarefree_decomposition(const LaurentPoly& f) {
    if (f.is_zero()) throw degenerate_input_error("squarefree decomposition of zero");
    SquarefreeDecomposition out;
    LaurentPoly a = f.unit_normalized().primitive_part();
    if (a.span() > 0) {
        LaurentPoly ad(detail::zderiv(a.coeffs()), 0);
        LaurentPoly g = gcd_primitive(a, ad);
        LaurentPoly w = div_exact(a, g);
        LaurentPoly z = div_exact(ad, g) - LaurentPoly(detail::zderiv(w.coeffs()), 0);
        unsigned i = 1;
        while (w.span() > 0) {
            LaurentPoly h = gcd_primitive(w, z);
            if (h.span() > 0) out.parts.emplace_back(h, i);
            w = div_exact(w, h);
            z = div_exact(z, h) - LaurentPoly(detail::zderiv(w.coeffs()), 0);
            ++i;
        }
    }
    // Whatever is left over (sign and the unit) goes to content/exponent.
    LaurentPoly prod(1);
    for (const auto& [p, m] : out.parts)
        for (unsigned k = 0; k < m; ++k) prod = prod * p;
    LaurentPoly rest = div_exact(f, prod);
    if (rest.span() != 0)
        throw consistency_error("squarefree decomposition failed to reassemble");
    out.content = rest.leading_coeff();
    out.exponent = rest.min_exp();
    return out;
}

/// Rational polynomial in t (no negative exponents), ascending coefficients,
/// trimmed, each coefficient in lowest terms (gmp keeps them canonical).
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
        detail::qtrim(coeffs_);
    }
    explicit RatPoly(const LaurentPoly& f) {
        if (f.is_zero()) return;
        if (f.min_exp() < 0)
            throw domain_error("RatPoly from Laurent polynomial with negative exponents");
        coeffs_.assign(static_cast<std::size_t>(f.max_exp()) + 1, Rat(0));
        for (std::size_t i = 0; i < f.coeffs().size(); ++i)
            coeffs_[static_cast<std::size_t>(f.min_exp()) + i] = Rat(f.coeffs()[i]);
    }

    bool is_zero() const { return coeffs_.empty(); }
    long degree() const { return detail::qdeg(coeffs_); }  // -1 for zero
    const std::vector<Rat>& coeffs() const { return coeffs_; }
    const Rat& leading_coeff() const {
        assert(!coeffs_.empty());
        return coeffs_.back();
    }

    RatPoly monic() const { return RatPoly(detail::qmonic(coeffs_)); }

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
        return RatPoly(detail::qadd(a.coeffs_, b.coeffs_));
    }
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
        return RatPoly(detail::qsub(a.coeffs_, b.coeffs_));
    }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        return RatPoly(detail::qmul(a.coeffs_, b.coeffs_));
    }
    friend RatPoly operator*(const Rat& c, const RatPoly& a) {
        return RatPoly(detail::qscale(a.coeffs_, c));
    }
    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.coeffs_ == b.coeffs_; }

    friend std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
        auto [q, r] = detail::qdivmod(a.coeffs_, b.coeffs_);
        return {RatPoly(std::move(q)), RatPoly(std::move(r))};
    }

    /// Smallest positive rational multiple with integer coefficients,
    /// then made primitive with positive leading coefficient.
    LaurentPoly clear_denominators() const {
        if (coeffs_.empty()) return {};
        Int den = 1;
        for (const auto& c : coeffs_) den = den / gcd(den, c.get_den()) * c.get_den();
        std::vector<Int> z(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            z[i] = coeffs_[i].get_num() * (den / coeffs_[i].get_den());
        LaurentPoly r(std::move(z), 0);
        r = r.primitive_part();
        if (r.leading_coeff() < 0) r = -r;
        return r;
    }

private:
    std::vector<Rat> coeffs_;
};

inline RatPoly gcd_monic(const RatPoly& a, const RatPoly& b) {
    return RatPoly(detail::qgcd_monic(a.coeffs(), b.coeffs()));
}

inline RatPoly lcm_monic(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly{};
    RatPoly g = gcd_monic(a, b);
    auto [q, r] = divmod(a * b, g);
    assert(r.is_zero());
    return q.monic();
}

inline std::ostream& operator<<(std::ostream& os, const RatPoly& f) {
    if (f.is_zero()) return os << "0";
    bool first = true;
    for (long e = f.degree(); e >= 0; --e) {
        Rat c = f.coeffs()[static_cast<std::size_t>(e)];
        if (sgn(c) == 0) continue;
        if (first) {
            if (sgn(c) < 0) os << "-";
            first = false;
        } else {
            os << (sgn(c) < 0 ? "-" : "+");
        }
        Rat a = abs(c);
        if (a != 1 || e == 0) os << a;
        if (e != 0) {
            os << "t";
            if (e != 1) os << "^" << e;
        }
    }
    return os;
}

}  // namespace augtor
