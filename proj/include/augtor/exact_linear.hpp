#pragma once

#include <cstdlib>
#include <utility>
#include <vector>

#include "augtor/laurent.hpp"

namespace augtor {

/// Dense matrix over Z, row-major, at least 1x1.
class IntMatrix {
public:
    IntMatrix(long rows, long cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), Int(0)) {
        if (rows < 1 || cols < 1) throw degenerate_input_error("matrix needs positive dimensions");
    }

    static IntMatrix identity(long n) {
        IntMatrix m(n, n);
        for (long i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    Int& at(long i, long j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    const Int& at(long i, long j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

    IntMatrix transposed() const {
        IntMatrix t(cols_, rows_);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw domain_error("matrix product shape mismatch");
        IntMatrix r(a.rows_, b.cols_);
        for (long i = 0; i < a.rows_; ++i)
            for (long k = 0; k < a.cols_; ++k) {
                const Int& aik = a.at(i, k);
                if (aik == 0) continue;
                for (long j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    long rows_, cols_;
    std::vector<Int> data_;
};

inline IntMatrix mat_pow(IntMatrix base, unsigned long e) {
    if (base.rows() != base.cols()) throw domain_error("power of non-square matrix");
    IntMatrix acc = IntMatrix::identity(base.rows());
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

inline Int trace(const IntMatrix& a) {
    Int t = 0;
    for (long i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a.at(i, i);
    return t;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Int bareiss_det(IntMatrix a) {
    if (a.rows() != a.cols()) throw domain_error("determinant of non-square matrix");
    long n = a.rows();
    int sign = 1;
    Int prev = 1;
    for (long k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            long pivot = -1;
            for (long i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) return 0;
            for (long j = k; j < n; ++j) swap(a.at(k, j), a.at(pivot, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                Int num = a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return sign < 0 ? Int(-a.at(n - 1, n - 1)) : a.at(n - 1, n - 1);
}

/// Monic characteristic polynomial det(tI - A), ascending coefficients,
/// by the Faddeev-LeVerrier recurrence (all divisions exact over Z).
inline LaurentPoly charpoly(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw domain_error("characteristic polynomial of non-square matrix");
    long n = a.rows();
    std::vector<Int> c(static_cast<std::size_t>(n) + 1);
    c[static_cast<std::size_t>(n)] = 1;
    IntMatrix m = a;
    Int ck = -trace(m);
    c[static_cast<std::size_t>(n - 1)] = ck;
    for (long k = 2; k <= n; ++k) {
        for (long i = 0; i < n; ++i) m.at(i, i) += ck;
        m = a * m;
        Int t = -trace(m);
        mpz_divexact_ui(ck.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(k));
        c[static_cast<std::size_t>(n - k)] = ck;
    }
    return LaurentPoly(std::move(c), 0);
}

/// Companion matrix of a monic integer polynomial of degree >= 1:
/// ones on the superdiagonal, negated low coefficients along the bottom row.
/// For t^r - 1 this is the cyclic shift with a 1 in the bottom-left corner.
inline IntMatrix companion_of(const LaurentPoly& p) {
    if (p.is_zero() || p.min_exp() < 0 || p.max_exp() < 1 || p.leading_coeff() != 1)
        throw domain_error("companion matrix needs a monic ordinary polynomial");
    long n = p.max_exp();
    IntMatrix c(n, n);
    for (long i = 0; i + 1 < n; ++i) c.at(i, i + 1) = 1;
    for (long j = 0; j < n; ++j) c.at(n - 1, j) = -p.coeff(j);
    return c;
}

inline IntMatrix companion_cyclic(long r) { return companion_of(cyclic_poly(r)); }

/// Presentation of a module over Z[t, 1/t]: gens() generators, rels()
/// relation columns, zero columns adjoined so that rels() >= gens().
class PresentationMatrix {
public:
    explicit PresentationMatrix(std::vector<std::vector<LaurentPoly>> rows) {
        if (rows.empty() || rows.front().empty())
            throw degenerate_input_error("empty presentation matrix");
        n_ = static_cast<long>(rows.size());
        m_ = static_cast<long>(rows.front().size());
        for (const auto& row : rows)
            if (static_cast<long>(row.size()) != m_)
                throw degenerate_input_error("ragged presentation matrix");
        if (m_ < n_) {
            for (auto& row : rows) row.resize(static_cast<std::size_t>(n_));
            m_ = n_;
        }
        entries_.reserve(static_cast<std::size_t>(n_ * m_));
        for (auto& row : rows)
            for (auto& e : row) entries_.push_back(std::move(e));
    }

    static PresentationMatrix cyclic(const LaurentPoly& delta) {
        return PresentationMatrix({{delta}});
    }

    long gens() const { return n_; }
    long rels() const { return m_; }

    const LaurentPoly& at(long i, long j) const {
        return entries_[static_cast<std::size_t>(i * m_ + j)];
    }

    bool is_cyclic_principal() const { return n_ == 1 && m_ == 1; }

private:
    long n_, m_;
    std::vector<LaurentPoly> entries_;
};

/// Size guard for block substitutions; AUGTOR_MAX_SNF_DIM overrides the
/// default of 10000 (read once per process).
inline long snf_dim_limit() {
    static const long limit = [] {
        if (const char* env = std::getenv("AUGTOR_MAX_SNF_DIM")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end && *end == '\0' && v > 0) return v;
        }
        return 10000L;
    }();
    return limit;
}

/// Replace each entry q(t) by the r x r integer block q(C_r) where C_r is the
/// companion of t^r - 1. C_r is invertible with C_r^r = I, so Laurent
/// exponents substitute via reduction mod r; this realizes t^-1 -> C_r^(r-1).
/// (Shifting an entry by t^k with k not a multiple of r would present a
/// different module, so only exponent reduction mod r is sound here.)
inline IntMatrix substitute_blocks(const PresentationMatrix& a, long r) {
    if (r < 1) throw domain_error("substitute_blocks needs r >= 1");
    long big = r * std::max(a.gens(), a.rels());
    if (big > snf_dim_limit())
        throw resource_error("block matrix dimension " + std::to_string(big) +
                             " exceeds limit " + std::to_string(snf_dim_limit()) +
                             " (set AUGTOR_MAX_SNF_DIM to raise)");
    IntMatrix out(r * a.gens(), r * a.rels());
    for (long bi = 0; bi < a.gens(); ++bi)
        for (long bj = 0; bj < a.rels(); ++bj) {
            const LaurentPoly& q = a.at(bi, bj);
            if (q.is_zero()) continue;
            for (long e = q.min_exp(); e <= q.max_exp(); ++e) {
                Int c = q.coeff(e);
                if (c == 0) continue;
                long k = ((e % r) + r) % r;
                // C_r^k is the permutation sending row i to column i+k mod r
                for (long i = 0; i < r; ++i)
                    out.at(bi * r + i, bj * r + (i + k) % r) += c;
            }
        }
    return out;
}

/// Same block substitution with the companion of nu_r = 1 + t + ... + t^(r-1)
/// (size r-1); that matrix also satisfies C^r = I. Needs r >= 2.
inline IntMatrix substitute_blocks_nu(const PresentationMatrix& a, long r) {
    if (r < 2) throw domain_error("substitute_blocks_nu needs r >= 2");
    long big = (r - 1) * std::max(a.gens(), a.rels());
    if (big > snf_dim_limit())
        throw resource_error("block matrix dimension " + std::to_string(big) +
                             " exceeds limit " + std::to_string(snf_dim_limit()) +
                             " (set AUGTOR_MAX_SNF_DIM to raise)");
    long n = r - 1;
    std::vector<IntMatrix> powers;
    powers.reserve(static_cast<std::size_t>(r));
    powers.push_back(IntMatrix::identity(n));
    IntMatrix c = companion_of(nu(r));
    for (long k = 1; k < r; ++k) powers.push_back(powers.back() * c);
    IntMatrix out(n * a.gens(), n * a.rels());
    for (long bi = 0; bi < a.gens(); ++bi)
        for (long bj = 0; bj < a.rels(); ++bj) {
            const LaurentPoly& q = a.at(bi, bj);
            if (q.is_zero()) continue;
            for (long e = q.min_exp(); e <= q.max_exp(); ++e) {
                Int coeff = q.coeff(e);
                if (coeff == 0) continue;
                const IntMatrix& p = powers[static_cast<std::size_t>(((e % r) + r) % r)];
                for (long i = 0; i < n; ++i)
                    for (long j = 0; j < n; ++j)
                        if (p.at(i, j) != 0) out.at(bi * n + i, bj * n + j) += coeff * p.at(i, j);
            }
        }
    return out;
}

struct SnfResult {
    std::vector<Int> diagonal;  // min(rows, cols) entries, d1 | d2 | ..., zeros last
    long free_rank = 0;         // zero entries in diagonal
    Int torsion_order = 1;      // product of the nonzero entries
};

/// Smith normal form over Z. Pivot choice is the smallest nonzero absolute
/// value in the remaining submatrix, which keeps coefficient growth tame.
inline SnfResult smith_normal_form(IntMatrix a) {
    long rows = a.rows(), cols = a.cols();
    long n = std::min(rows, cols);
    long k = 0;
    while (k < n) {
        long pi = -1, pj = -1;
        for (long i = k; i < rows; ++i)
            for (long j = k; j < cols; ++j) {
                if (a.at(i, j) == 0) continue;
                if (pi < 0 || mpz_cmpabs(a.at(i, j).get_mpz_t(), a.at(pi, pj).get_mpz_t()) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        if (pi != k)
            for (long j = 0; j < cols; ++j) swap(a.at(k, j), a.at(pi, j));
        if (pj != k)
            for (long i = 0; i < rows; ++i) swap(a.at(i, k), a.at(i, pj));

        bool clean = true;
        for (long i = k + 1; i < rows; ++i) {
            if (a.at(i, k) == 0) continue;
            Int q = a.at(i, k) / a.at(k, k);  // truncated; remainder shrinks
            if (q != 0)
                for (long j = k; j < cols; ++j) a.at(i, j) -= q * a.at(k, j);
            if (a.at(i, k) != 0) clean = false;
        }
        for (long j = k + 1; j < cols; ++j) {
            if (a.at(k, j) == 0) continue;
            Int q = a.at(k, j) / a.at(k, k);
            if (q != 0)
                for (long i = k; i < rows; ++i) a.at(i, j) -= q * a.at(i, k);
            if (a.at(k, j) != 0) clean = false;
        }
        if (!clean) continue;  // smaller pivot now exists, reselect

        // pivot must divide everything that is left
        bool divides_all = true;
        for (long i = k + 1; i < rows && divides_all; ++i)
            for (long j = k + 1; j < cols && divides_all; ++j)
                if (!mpz_divisible_p(a.at(i, j).get_mpz_t(), a.at(k, k).get_mpz_t())) {
                    for (long jj = k; jj < cols; ++jj) a.at(k, jj) += a.at(i, jj);
                    divides_all = false;
                }
        if (!divides_all) continue;
        ++k;
    }
    SnfResult out;
    out.diagonal.resize(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) out.diagonal[static_cast<std::size_t>(i)] = abs(a.at(i, i));
    for (long i = k; i < n; ++i) out.diagonal[static_cast<std::size_t>(i)] = 0;
    out.free_rank = n - k;
    for (long i = 0; i < k; ++i) out.torsion_order *= out.diagonal[static_cast<std::size_t>(i)];
    return out;
}

/// For phi a squarefree product of cyclotomics Phi_d with every d | r:
/// rows of R are t^b * (t^r-1)/phi for b < deg phi, written in the basis
/// 1..t^(r-1). Returns det(R R^T) and the product of the nonzero eigenvalues
/// of phi(C_r); the two agree up to sign.
inline std::pair<Int, Int> annihilator_identity_check(const LaurentPoly& phi, long r) {
    if (r < 1) throw domain_error("annihilator check needs r >= 1");
    LaurentPoly p = phi.unit_normalized();
    if (p.is_zero()) throw degenerate_input_error("zero annihilator polynomial");
    auto [ok, psi] = try_div_exact(cyclic_poly(r), p);
    if (!ok) throw domain_error("phi does not divide t^r-1");
    long s = p.span();  // s <= r since phi divides t^r-1

    Int det_gram = 1;
    if (s > 0) {
        IntMatrix rmat(s, r);
        for (long b = 0; b < s; ++b)
            for (long e = psi.min_exp(); e <= psi.max_exp(); ++e)
                rmat.at(b, b + e) = psi.coeff(e);  // deg(t^b psi) = b + r - s < r
        det_gram = bareiss_det(rmat * rmat.transposed());
    }

    LaurentPoly cp = charpoly(substitute_blocks(PresentationMatrix::cyclic(p), r));
    Int eig = cp.coeff(s);
    if ((r - s) % 2 != 0) eig = -eig;  // prod of nonzero eigenvalues from t^s coefficient
    return {det_gram, eig};
}

/// Invariant factors of the rational module presented by a: the nonconstant
/// diagonal of the Smith form over Q[t], denominators cleared, each factor
/// primitive with positive leading coefficient and min_exp 0. Powers of t are
/// units of the Laurent ring and are stripped. Rank deficiency (a free
/// rational summand) is refused.
inline std::vector<LaurentPoly> rational_invariant_factors(const PresentationMatrix& a) {
    long rows = a.gens(), cols = a.rels();
    std::vector<std::vector<RatPoly>> w(static_cast<std::size_t>(rows),
                                        std::vector<RatPoly>(static_cast<std::size_t>(cols)));
    for (long j = 0; j < cols; ++j) {
        long shift = 0;
        for (long i = 0; i < rows; ++i)
            if (!a.at(i, j).is_zero()) shift = std::min(shift, a.at(i, j).min_exp());
        for (long i = 0; i < rows; ++i)
            w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                RatPoly(a.at(i, j).shifted(-shift));  // column times the unit t^-shift
    }

    auto entry = [&](long i, long j) -> RatPoly& {
        return w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    };
    long n = std::min(rows, cols);
    long k = 0;
    while (k < n) {
        long pi = -1, pj = -1;
        for (long i = k; i < rows; ++i)
            for (long j = k; j < cols; ++j)
                if (!entry(i, j).is_zero() &&
                    (pi < 0 || entry(i, j).degree() < entry(pi, pj).degree())) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        if (pi != k)
            for (long j = 0; j < cols; ++j) std::swap(entry(k, j), entry(pi, j));
        if (pj != k)
            for (long i = 0; i < rows; ++i) std::swap(entry(i, k), entry(i, pj));

        bool clean = true;
        for (long i = k + 1; i < rows; ++i) {
            if (entry(i, k).is_zero()) continue;
            auto [q, rem] = divmod(entry(i, k), entry(k, k));
            if (!q.is_zero())
                for (long j = k; j < cols; ++j) entry(i, j) = entry(i, j) - q * entry(k, j);
            if (!entry(i, k).is_zero()) clean = false;
        }
        for (long j = k + 1; j < cols; ++j) {
            if (entry(k, j).is_zero()) continue;
            auto [q, rem] = divmod(entry(k, j), entry(k, k));
            if (!q.is_zero())
                for (long i = k; i < rows; ++i) entry(i, j) = entry(i, j) - q * entry(i, k);
            if (!entry(k, j).is_zero()) clean = false;
        }
        if (!clean) continue;

        bool divides_all = true;
        for (long i = k + 1; i < rows && divides_all; ++i)
            for (long j = k + 1; j < cols && divides_all; ++j) {
                auto [q, rem] = divmod(entry(i, j), entry(k, k));
                if (!rem.is_zero()) {
                    for (long jj = k; jj < cols; ++jj)
                        entry(k, jj) = entry(k, jj) + entry(i, jj);
                    divides_all = false;
                }
            }
        if (!divides_all) continue;
        ++k;
    }
    if (k < n)
        throw hypothesis_error(
            "rational presentation is rank-deficient; the module has a free rational summand");

    std::vector<LaurentPoly> pis;
    for (long i = 0; i < n; ++i) {
        const RatPoly& d = entry(i, i);
        if (d.degree() < 1) continue;
        LaurentPoly z = d.clear_denominators().unit_normalized();
        if (z.span() >= 1) pis.push_back(std::move(z));
    }
    return pis;
}

}  // namespace augtor
