#include <catch2/catch_amalgamated.hpp>

#include <cstddef>
#include <vector>

#include "augtor/recurrence.hpp"
#include "test_util.hpp"

using namespace augtor;

namespace {

LaurentPoly P(std::vector<long> asc, long min_exp = 0) {
    std::vector<Int> c;
    c.reserve(asc.size());
    for (long v : asc) c.emplace_back(v);
    return LaurentPoly(std::move(c), min_exp);
}

std::vector<Int> V(std::initializer_list<long> xs) {
    return std::vector<Int>(xs.begin(), xs.end());
}

const LaurentPoly fig8 = P({1, -3, 1});
const LaurentPoly trefoil = P({1, -1, 1});  // Phi_6

// Negate every other coefficient, leading-first order: the annihilator of
// the mirrored sequence (-1)^r u_r.
std::vector<Int> mirror(std::vector<Int> c) {
    for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    return c;
}

// Leading-first coefficients applied to every full window of u (u starts at
// any index; only differences matter).
bool annihilates(const std::vector<Int>& c, const std::vector<Int>& u) {
    long m = static_cast<long>(c.size()) - 1;
    if (static_cast<long>(u.size()) <= m) return true;
    for (long r = 0; r + m < static_cast<long>(u.size()); ++r) {
        Int acc(0);
        for (long i = 0; i <= m; ++i)
            acc += c[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(r + m - i)];
        if (acc != 0) return false;
    }
    return true;
}

// Signed R(f, r) = Res(f0, t^r - 1) with the unit part of f dropped and
// R(f, 0) = 0.
Int signed_res(const LaurentPoly& f, long r) {
    if (r == 0) return 0;
    return resultant(f.shifted(-f.min_exp()), cyclic_poly(r));
}

}  // namespace

TEST_CASE("Lehmer factor lists are exact") {
    auto fl = lehmer_factors(fig8);
    REQUIRE(fl.size() == 3);
    CHECK(fl[0] == P({-1, 1}));
    CHECK(fl[1] == fig8);
    CHECK(fl[2] == P({-1, 1}));

    fl = lehmer_factors(P({-2, 1}));
    REQUIRE(fl.size() == 2);
    CHECK(fl[0] == P({-1, 1}));
    CHECK(fl[1] == P({-2, 1}));

    fl = lehmer_factors(trefoil);
    REQUIRE(fl.size() == 3);
    CHECK(fl[0] == P({-1, 1}));
    CHECK(fl[1] == trefoil);
    CHECK(fl[2] == P({-1, 1}));

    // Non-monic inputs: the factors are the integer-cleared monic charpolys,
    // so 2t - 1 keeps its root 1/2 and 2t - 4 collapses to t - 2.
    fl = lehmer_factors(P({-1, 2}));
    REQUIRE(fl.size() == 2);
    CHECK(fl[0] == P({-1, 1}));
    CHECK(fl[1] == P({-1, 2}));

    fl = lehmer_factors(P({-4, 2}));
    REQUIRE(fl.size() == 2);
    CHECK(fl[0] == P({-1, 1}));
    CHECK(fl[1] == P({-2, 1}));

    // (t-2)(t-3)(t+1): pair products -2, -3, 6 and full product -6.
    LaurentPoly cubic = P({-2, 1}) * P({-3, 1}) * P({1, 1});
    fl = lehmer_factors(cubic);
    REQUIRE(fl.size() == 4);
    CHECK(fl[0] == P({-1, 1}));
    CHECK(fl[1] == cubic);
    CHECK(fl[2] == P({-36, -24, -1, 1}));
    CHECK(fl[3] == P({6, 1}));

    CHECK(lehmer_factors(fig8.shifted(-1)) == lehmer_factors(fig8));

    CHECK_THROWS_AS(lehmer_factors(P({5})), domain_error);
    CHECK_THROWS_AS(lehmer_factors(LaurentPoly{}), domain_error);
}

TEST_CASE("scaled compounds match generic rational minors") {
    testutil::Rng rng(0x5eed0401);
    using Mat = std::vector<std::vector<Rat>>;
    auto det = [](auto&& self, const Mat& m) -> Rat {
        std::size_t n = m.size();
        if (n == 0) return Rat(1);
        if (n == 1) return m[0][0];
        Rat acc(0);
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(m[0][j]) == 0) continue;
            Mat sub(n - 1, std::vector<Rat>(n - 1));
            for (std::size_t i = 1; i < n; ++i) {
                std::size_t cc = 0;
                for (std::size_t jj = 0; jj < n; ++jj) {
                    if (jj == j) continue;
                    sub[i - 1][cc++] = m[i][jj];
                }
            }
            Rat term = m[0][j] * self(self, sub);
            if (j % 2 != 0) term = -term;
            acc += term;
        }
        return acc;
    };

    for (int it = 0; it < 25; ++it) {
        long d = rng.range(1, 5);
        std::vector<Int> a(static_cast<std::size_t>(d) + 1);
        for (auto& x : a) x = rng.range(-6, 6);
        while (a.back() == 0) a.back() = rng.range(-6, 6);
        while (a.front() == 0) a.front() = rng.range(-6, 6);

        Mat comp(static_cast<std::size_t>(d), std::vector<Rat>(static_cast<std::size_t>(d), Rat(0)));
        for (long i = 0; i + 1 < d; ++i) comp[static_cast<std::size_t>(i)][static_cast<std::size_t>(i) + 1] = 1;
        for (long j = 0; j < d; ++j)
            comp[static_cast<std::size_t>(d) - 1][static_cast<std::size_t>(j)] =
                Rat(Int(-a[static_cast<std::size_t>(j)])) / Rat(a.back());

        for (long k = 0; k <= d; ++k) {
            auto subs = detail::k_subsets(static_cast<int>(d), static_cast<int>(k));
            IntMatrix b = detail::scaled_compound(a, static_cast<int>(k));
            REQUIRE(b.rows() == static_cast<long>(subs.size()));
            for (std::size_t si = 0; si < subs.size(); ++si) {
                for (std::size_t ti = 0; ti < subs.size(); ++ti) {
                    Mat minor(static_cast<std::size_t>(k), std::vector<Rat>(static_cast<std::size_t>(k)));
                    for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i)
                        for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j)
                            minor[i][j] = comp[static_cast<std::size_t>(subs[si][i])]
                                              [static_cast<std::size_t>(subs[ti][j])];
                    Rat want = Rat(a.back()) * det(det, minor);
                    CHECK(want == Rat(b.at(static_cast<long>(si), static_cast<long>(ti))));
                }
            }
        }
    }
}

TEST_CASE("last Lehmer factor carries the full root product") {
    testutil::Rng rng(0x5eed0402);
    for (int it = 0; it < 40; ++it) {
        long d = rng.range(1, 5);
        std::vector<Int> a(static_cast<std::size_t>(d) + 1);
        for (auto& x : a) x = rng.range(-6, 6);
        while (a.back() == 0) a.back() = rng.range(-6, 6);
        while (a.front() == 0) a.front() = rng.range(-6, 6);
        LaurentPoly f(a, 0);

        std::vector<Int> lin{a.front(), a.back()};
        if (d % 2 == 0) lin[0] = -lin[0];  // root (-1)^d a_0 / c_0
        LaurentPoly expect = LaurentPoly(std::move(lin), 0).primitive_part();
        if (expect.leading_coeff() < 0) expect = -expect;
        auto fl = lehmer_factors(f);
        CHECK(fl.front() == P({-1, 1}));
        CHECK(fl.back() == expect);
    }
}

TEST_CASE("recurrence specs carry the frozen coefficients and seeds") {
    RecurrenceSpec s = recurrence_spec(fig8);
    CHECK(s.coefficients == V({1, -4, 4, -1}));
    CHECK(s.order() == 3);
    CHECK(s.sign_mode == SignMode::constant);
    CHECK(s.seed_start == 0);
    CHECK(s.seed == V({0, 1, 5}));
    CHECK(eval_recurrence(s, 3) == 16);
    CHECK(eval_recurrence(s, 4) == 45);
    CHECK(recurrence_spec(fig8.shifted(-1)).coefficients == s.coefficients);
    CHECK(recurrence_spec(fig8.shifted(2)).seed == s.seed);

    s = recurrence_spec(P({-2, 1}));
    CHECK(s.coefficients == V({1, -3, 2}));
    CHECK(s.seed_start == 0);
    CHECK(s.seed == V({0, 1}));
    CHECK(eval_recurrence(s, 5) == 31);

    // Same sequence 2^r - 1 from the non-monic side: seeds start at 1.
    s = recurrence_spec(P({-1, 2}));
    CHECK(s.coefficients == V({1, -3, 2}));
    CHECK(s.seed_start == 1);
    CHECK(s.seed == V({1, 3}));
    CHECK(eval_recurrence(s, 5) == 31);

    // A root below -1 makes the resultant signs alternate; the stored
    // polynomial annihilates |R| = 3^r - (-1)^r.
    s = recurrence_spec(P({3, 1}));
    CHECK(s.sign_mode == SignMode::alternating);
    CHECK(s.coefficients == V({1, -2, -3}));
    CHECK(s.seed == V({0, 4}));
    CHECK(eval_recurrence(s, 3) == 28);
    CHECK(eval_recurrence(s, 6) == 728);

    // Cyclotomic input: the sequence vanishes on multiples of 6 and the
    // recurrence tracks that exactly.
    s = recurrence_spec(trefoil);
    CHECK(s.coefficients == V({1, -2, 2, -1}));
    CHECK(s.seed == V({0, 1, 3}));
    CHECK(eval_recurrence(s, 4) == 3);
    CHECK(eval_recurrence(s, 6) == 0);
    CHECK(eval_recurrence(s, 7) == 1);
    CHECK(eval_recurrence(s, 12) == 0);

    // t - 1: the literal resultant sequence is identically zero.
    s = recurrence_spec(P({-1, 1}));
    CHECK(s.coefficients == V({1, -1}));
    CHECK(s.seed == V({0}));
    CHECK(eval_recurrence(s, 9) == 0);

    CHECK_THROWS_AS(recurrence_spec(P({7})), domain_error);
    CHECK_THROWS_AS(recurrence_spec(LaurentPoly{}), domain_error);
}

TEST_CASE("evaluation guards its recurrence") {
    RecurrenceSpec s = recurrence_spec(P({-1, 2}));
    CHECK(eval_recurrence(s, 1) == s.seed[0]);
    CHECK(eval_recurrence(s, 2) == s.seed[1]);
    CHECK_THROWS_AS(eval_recurrence(s, 0), domain_error);

    RecurrenceSpec bad;
    bad.coefficients = V({2, 1});
    bad.seed = V({1});
    CHECK_THROWS_AS(eval_recurrence(bad, 5), consistency_error);

    bad.coefficients = V({1});
    CHECK_THROWS_AS(eval_recurrence(bad, 5), degenerate_input_error);
    bad.coefficients = V({0, 1});
    CHECK_THROWS_AS(eval_recurrence(bad, 5), degenerate_input_error);
    bad.coefficients = V({1, -2});
    bad.seed = V({1, 3});
    CHECK_THROWS_AS(eval_recurrence(bad, 5), degenerate_input_error);
}

TEST_CASE("random polynomials: both resultant orientations satisfy their recurrences") {
    testutil::Rng rng(0x5eed0403);
    for (int it = 0; it < 70; ++it) {
        std::vector<Int> c(static_cast<std::size_t>(rng.range(1, 4)) + 1);
        for (auto& x : c) x = rng.range(-5, 5);
        while (c.back() == 0) c.back() = rng.range(-5, 5);
        LaurentPoly f(std::move(c), 0);
        if (f.span() < 1) continue;
        LaurentPoly f0 = f.shifted(-f.min_exp());

        RecurrenceSpec spec = recurrence_spec(f);
        long m = spec.order();
        CHECK(m <= (1l << f0.span()));

        std::vector<Int> signed_seq, abs_seq;
        for (long r = 0; r <= m + 30; ++r) {
            Int v = signed_res(f, r);
            if (r > 0) CHECK(abs(v) == abs(res_cyclic(f0, r)));
            abs_seq.push_back(abs(v));
            signed_seq.push_back(std::move(v));
        }
        CHECK(annihilates(spec.coefficients, abs_seq));
        std::vector<Int> for_signed = spec.sign_mode == SignMode::constant
                                          ? spec.coefficients
                                          : mirror(spec.coefficients);
        CHECK(annihilates(for_signed, signed_seq));
        for (long r = spec.seed_start; r <= m + 30; ++r)
            CHECK(eval_recurrence(spec, r) == abs_seq[static_cast<std::size_t>(r)]);
    }
}

TEST_CASE("order bounds: 2^d always, Stevens bound on the radical") {
    testutil::Rng rng(0x5eed0404);
    for (int it = 0; it < 30; ++it) {
        long a = rng.range(1, 5) * (rng.range(0, 1) != 0 ? 1 : -1);
        long b = rng.range(-5, 5);
        LaurentPoly f = P({a, b, a});
        REQUIRE(f.is_reciprocal());
        CHECK(recurrence_spec(f).order() <= 3);

        long c = rng.range(-5, 5);
        LaurentPoly g = P({a, b, c, b, a});
        REQUIRE(g.is_reciprocal());
        RecurrenceSpec spec = recurrence_spec(g);
        CHECK(spec.order() <= 16);
        std::vector<Int> asc(spec.coefficients.rbegin(), spec.coefficients.rend());
        auto dec = squarefree_decomposition(LaurentPoly(std::move(asc), 0));
        long radical_deg = 0;
        for (const auto& [part, mult] : dec.parts) radical_deg += part.span();
        CHECK(radical_deg <= 9);

        LaurentPoly h = P({a, b, b, a});
        REQUIRE(h.is_reciprocal());
        CHECK(recurrence_spec(h).order() <= 8);
    }

    // The lcm construction keeps multiplicities, so its order can top the
    // distinct-root (Stevens) bound: two reciprocal quadratics both put the
    // eigenvalue 1 in the second compound, m = 10 > 9 while the radical has
    // degree 9.  Sequence checked exactly over the first 46 values.
    LaurentPoly f = fig8 * P({1, -4, 1});
    REQUIRE(f == P({1, -7, 14, -7, 1}));
    RecurrenceSpec spec = recurrence_spec(f);
    CHECK(spec.order() == 10);
    CHECK(spec.coefficients ==
          V({1, -21, 160, -609, 1309, -1680, 1309, -609, 160, -21, 1}));
    CHECK(spec.sign_mode == SignMode::constant);
    std::vector<Int> seq;
    for (long r = 0; r <= 45; ++r) seq.push_back(signed_res(f, r));
    CHECK(annihilates(spec.coefficients, seq));
}

TEST_CASE("figure-eight value at r = 1361 is the square of a 285-digit prime") {
    RecurrenceSpec spec = recurrence_spec(fig8);
    Int v = eval_recurrence(spec, 1361);
    CHECK(v.get_str().size() == 569);
    REQUIRE(mpz_perfect_square_p(v.get_mpz_t()) != 0);
    Int root;
    mpz_sqrt(root.get_mpz_t(), v.get_mpz_t());
    CHECK(root.get_str().size() == 285);
    CHECK(mpz_probab_prime_p(root.get_mpz_t(), 64) >= 1);
}

TEST_CASE("torsion recurrences match the worked examples") {
    RecurrenceSpec s = torsion_recurrence(fig8);
    CHECK(s.coefficients == V({1, -4, 4, -1}));
    CHECK(s.seed_start == 1);
    CHECK(s.seed == V({1, 5, 16}));
    CHECK(eval_recurrence(s, 12) == 103680);

    // Phi_6 fig8: gamma = 6, so the base polynomial (t-1)(t^2-3t+1) acts
    // through sixth powers: P = (t^6-1)(t^12-322t^6+1).
    LaurentPoly d6 = trefoil * fig8;
    s = torsion_recurrence(d6);
    REQUIRE(s.order() == 18);
    std::vector<Int> expect(19, Int(0));
    expect[0] = 1;
    expect[6] = -323;
    expect[12] = 323;
    expect[18] = -1;
    CHECK(s.coefficients == expect);
    CHECK(s.seed[0] == 1);
    CHECK(s.seed[5] == 80);
    CHECK(s.seed[11] == 25920);
    for (long r = 19; r <= 28; ++r)
        CHECK(eval_recurrence(s, r) == torsion_formula(d6, r));

    // Phi_1 Phi_6 fig8 shares the characteristic polynomial, and because
    // |Phi_6(1) fig8(1)| = 1 even the b_r sequence coincides.
    LaurentPoly d16 = P({-1, 1}) * d6;
    RecurrenceSpec s2 = torsion_recurrence(d16);
    CHECK(s2.coefficients == s.coefficients);
    CHECK(s2.seed == s.seed);
    for (long r = 19; r <= 26; ++r)
        CHECK(eval_recurrence(s2, r) == torsion_formula(d16, r));

    // Phi_1^2 fig8: the repeated cyclotomic factor contributes one power of
    // r, squaring the base polynomial.
    LaurentPoly d11 = P({-1, 1}) * P({-1, 1}) * fig8;
    REQUIRE(d11 == P({1, -5, 8, -5, 1}));
    s = torsion_recurrence(d11);
    CHECK(s.coefficients == V({1, -8, 24, -34, 24, -8, 1}));
    CHECK(s.seed == V({1, 10, 48, 180, 605, 1920}));
    for (long r = 7; r <= 20; ++r)
        CHECK(eval_recurrence(s, r) == torsion_snf(PresentationMatrix::cyclic(d11), r).torsion);

    s = torsion_recurrence(P({-1, 1}) * P({-1, 1}));
    CHECK(s.coefficients == V({1, -2, 1}));
    CHECK(s.seed == V({1, 2}));
    for (long r = 1; r <= 40; ++r) CHECK(eval_recurrence(s, r) == r);
    // (t-1)^3 annihilates b_r = r as well: vanishing third differences.
    std::vector<Int> linear;
    for (long r = 1; r <= 12; ++r) linear.emplace_back(r);
    CHECK(annihilates(V({1, -3, 3, -1}), linear));

    s = torsion_recurrence(Int(6) * P({-1, 1}));
    CHECK(s.coefficients == V({1, -6}));
    CHECK(s.seed == V({1}));
    CHECK(eval_recurrence(s, 1) == 1);
    CHECK(eval_recurrence(s, 4) == 216);

    // Torsion semantics, not literal resultants: t - 1 presents a free
    // module, b_r = 1, while recurrence_spec(t - 1) tracks R = 0.
    s = torsion_recurrence(P({-1, 1}));
    CHECK(s.coefficients == V({1, -1}));
    CHECK(s.seed == V({1}));
    CHECK(eval_recurrence(s, 17) == 1);

    s = torsion_recurrence(LaurentPoly({Int(-1)}, 3));  // unit -t^3
    CHECK(s.coefficients == V({1, -1}));
    CHECK(eval_recurrence(s, 9) == 1);

    CHECK_THROWS_AS(torsion_recurrence(LaurentPoly{}), degenerate_input_error);
}

TEST_CASE("torsion recurrences annihilate the Smith-form oracle sequences") {
    LaurentPoly one = P({-1, 1});
    std::vector<LaurentPoly> family = {one * one * fig8, trefoil * fig8, one * trefoil * fig8};
    for (const auto& delta : family) {
        RecurrenceSpec spec = torsion_recurrence(delta);
        PresentationMatrix cyc = PresentationMatrix::cyclic(delta);
        std::vector<Int> oracle;
        for (long r = 1; r <= 40; ++r) oracle.push_back(torsion_snf(cyc, r).torsion);
        CHECK(annihilates(spec.coefficients, oracle));
    }
}

TEST_CASE("structure constants fit the torsion profile exactly") {
    auto sc = structure_constants(P({-1, 1}) * P({-1, 1}), 0, {1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(sc.m == 1);
    CHECK(sc.c == Rat(1));

    sc = structure_constants(fig8, 0, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    CHECK(sc.m == 0);
    CHECK(sc.c == Rat(1));

    std::vector<long> all20;
    for (long r = 1; r <= 20; ++r) all20.push_back(r);
    sc = structure_constants(P({-1, 1}) * P({-1, 1}) * fig8, 0, all20);
    CHECK(sc.m == 1);
    CHECK(sc.c == Rat(1));

    sc = structure_constants(Int(6) * P({-1, 1}), 0, {1, 2, 3, 4});
    CHECK(sc.m == 0);
    CHECK(sc.c == Rat(1, 6));

    // gamma = 6: the periodic cyclotomic evaluations give a different
    // constant on each residue class.
    LaurentPoly d16 = P({-1, 1}) * trefoil * fig8;
    CHECK(structure_constants(d16, 0, {6, 12, 18}).c == Rat(1, 4));
    CHECK(structure_constants(d16, 1, {1, 7, 13}).c == Rat(1));
    CHECK(structure_constants(d16, 2, {2, 8, 14}).c == Rat(3));
    CHECK(structure_constants(d16, 3, {3, 9, 15}).c == Rat(4));
    CHECK(structure_constants(d16, 0, {6, 12, 18}).m == 0);
    CHECK(structure_constants(d16, 7, {1, 7, 13}).c == Rat(1));  // class taken mod gamma

    CHECK_THROWS_AS(structure_constants(d16, 0, {6, 7}), domain_error);
    CHECK_THROWS_AS(structure_constants(d16, 0, {}), domain_error);
    CHECK_THROWS_AS(structure_constants(d16, 0, {0, 6}), domain_error);
    CHECK_THROWS_AS(structure_constants(LaurentPoly{}, 0, {1}), degenerate_input_error);
}
