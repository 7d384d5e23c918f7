#include <gmpxx.h>

#include <map>

#include "doctest.h"
#include "formal_group.hpp"
#include "helpers.hpp"

using namespace ltc;
using namespace ltc::testing;

namespace {

constexpr long M = 20;

Scalar from_q(const LocalField* F, const mpq_class& x, long prec) {
    if (x == 0) return Scalar::zero(F, kInf);
    return Scalar::from_int(F, x.get_num(), prec) * Scalar::from_int(F, x.get_den(), prec).inverse();
}

using QPoly = std::vector<mpq_class>;

QPoly qmul(const QPoly& a, const QPoly& b, long N) {
    QPoly c(N, 0);
    for (long i = 0; i < N; ++i)
        if (a[i] != 0)
            for (long j = 0; i + j < N; ++j) c[i + j] += a[i] * b[j];
    return c;
}

// rational log of the special model over Q_3 from log([pi] Z) = pi log Z
QPoly rational_log_special(long p, long N) {
    QPoly frob(N, 0);
    frob[1] = p;
    if (p < N) frob[p] = 1;
    std::vector<QPoly> pw{QPoly(N, 0)};
    pw[0][0] = 1;
    for (long j = 1; j < N; ++j) pw.push_back(qmul(pw.back(), frob, N));
    QPoly l(N, 0);
    l[1] = 1;
    for (long k = 2; k < N; ++k) {
        mpq_class acc = 0;
        for (long j = 1; j < k; ++j) acc += l[j] * pw[j][k];
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
        l[k] = -acc / mpq_class(pk - p);
    }
    return l;
}

QPoly rational_reversion(const QPoly& l, long N) {
    QPoly e(N, 0);
    e[1] = 1;
    for (long m = 2; m < N; ++m) {
        QPoly pw(N, 0), acc(N, 0);
        pw[0] = 1;
        for (long j = 1; j < N; ++j) {
            pw = qmul(pw, e, N);
            for (long t = 0; t < N; ++t) acc[t] += l[j] * pw[t];
        }
        e[m] -= acc[m];
    }
    return e;
}

Series monomial(const LocalField* F, long c, long k, long prec = 60) { return Series::monomial(Scalar::from_int(F, c, prec), k); }

}  // namespace

TEST_CASE("multiplicative model: group law and invariant data") {
    auto F = qp(3);
    auto G = FormalGroup::make(F, ModelKind::Multiplicative, 32, M);
    Bivariate law = G->group_law(8);
    for (long i = 0; i < 8; ++i)
        for (long j = 0; i + j < 8; ++j) {
            long expect = ((i == 1 && j == 0) || (i == 0 && j == 1) || (i == 1 && j == 1)) ? 1 : 0;
            CHECK((law.at(i, j) - Scalar::from_int(F.get(), expect, M)).is_zero());
        }
    // the generic solver recovers X + Y + XY from the coefficients of (1+Z)^3 - 1
    std::vector<Vec> coeffs{{0}, {3}, {3}, {1}};
    auto C = FormalGroup::make(F, ModelKind::Custom, 32, M, coeffs);
    Bivariate solved = C->group_law(8);
    for (long i = 0; i < 8; ++i)
        for (long j = 0; i + j < 8; ++j) CHECK((solved.at(i, j) - law.at(i, j)).is_zero());

    Series g = G->g();
    for (long k = 0; k < 32; ++k) CHECK(g.coeff(k).equals(Scalar::from_int(F.get(), k % 2 ? -1 : 1, M)));
    for (long k = 1; k < 32; ++k)
        CHECK((G->log().coeff(k) - Scalar::from_rational(F.get(), k % 2 ? 1 : -1, k, M - 3)).is_zero());
}

TEST_CASE("special model p=3: group law against the rational exp(log X + log Y)") {
    const long D = 8;
    auto F = qp(3);
    auto G = FormalGroup::make(F, ModelKind::Special, 32, M);
    Bivariate law = G->group_law(D);
    QPoly l = rational_log_special(3, D), e = rational_reversion(l, D);
    // bivariate rational F = e(l(X) + l(Y)) via powers of s = l(X) + l(Y)
    std::map<std::pair<long, long>, mpq_class> s, pw, Fq;
    for (long k = 1; k < D; ++k) {
        s[{k, 0}] += l[k];
        s[{0, k}] += l[k];
    }
    pw[{0, 0}] = 1;
    for (long j = 1; j < D; ++j) {
        std::map<std::pair<long, long>, mpq_class> nx;
        for (auto& [a, x] : pw)
            for (auto& [b, y] : s) {
                long i = a.first + b.first, jj = a.second + b.second;
                if (i + jj < D) nx[{i, jj}] += x * y;
            }
        pw = nx;
        for (auto& [a, x] : pw) Fq[a] += e[j] * x;
    }
    long checked = 0;
    for (long i = 0; i < D; ++i)
        for (long j = 0; i + j < D; ++j) {
            Scalar expect = from_q(F.get(), Fq[{i, j}], 40);
            CHECK((law.at(i, j) - expect).is_zero());
            CHECK(law.at(i, j).prec() >= M);
            ++checked;
        }
    CHECK(checked == D * (D + 1) / 2);
    // degree-3 coefficient of X^2 Y: (pi^3 - pi) c = 3, so c = 3/24 = 1/8
    CHECK(law.at(2, 1).equals(from_q(F.get(), mpq_class(1, 8), M)));
    CHECK(law.at(1, 1).is_zero());
}

TEST_CASE("group law axioms") {
    std::mt19937_64 rng(4);
    for (auto F : {qp(3), unram(3, 2), eis(3, {-3, 0})}) {
        const LocalField* K = F.get();
        auto G = FormalGroup::make(F, ModelKind::Special, 24, M);
        const long D = 10;
        Bivariate law = G->group_law(D);
        for (long i = 0; i < D; ++i) {
            CHECK((law.at(i, 0) - Scalar::from_int(K, i == 1 ? 1 : 0, M)).is_zero());
            for (long j = 0; i + j < D; ++j) CHECK((law.at(i, j) - law.at(j, i)).is_zero());
        }
        Series z = monomial(K, 1, 1);
        Series x = z + monomial(K, 2, 3);
        Series y = Series(K, 1, {rand_int_scalar(K, rng, 60), rand_int_scalar(K, rng, 60)});
        Series w = monomial(K, -1, 1) + monomial(K, 1, 2);
        Series fr = G->frobenius(60);
        // F([pi] x, [pi] y) = [pi](F(x, y))
        Series lhs = G->add(law, compose(fr, x, D), compose(fr, y, D));
        Series rhs = compose(fr, G->add(law, x, y), D);
        CHECK(compare(lhs, rhs, D).equal);
        // associativity
        Series a1 = G->add(law, G->add(law, x, y), w);
        Series a2 = G->add(law, x, G->add(law, y, w));
        CHECK(compare(a1, a2, D).equal);
        // g_LT = (dF/dY(Z, 0))^{-1}
        Series dF = law.slice_y(1);
        CHECK(compare(dF.invert(), G->g(), D).equal);
    }
}

TEST_CASE("a-multiplications") {
    auto F = qp(3);
    const LocalField* K = F.get();
    auto Mu = FormalGroup::make(F, ModelKind::Multiplicative, 24, M);
    // [7](Z) = (1+Z)^7 - 1 and [-1](Z) = (1+Z)^{-1} - 1
    Series a7 = Mu->a_mult(Scalar::from_int(K, 7, M));
    mpz_class b = 1;
    for (long k = 1; k < 24; ++k) {
        b = k <= 7 ? mpz_class(b * (7 - k + 1) / k) : mpz_class(0);
        CHECK((a7.coeff(k) - Scalar::from_int(K, b, M)).is_zero());
    }
    Series am1 = Mu->a_mult(Scalar::from_int(K, -1, M));
    for (long k = 1; k < 24; ++k) CHECK((am1.coeff(k) - Scalar::from_int(K, k % 2 ? -1 : 1, M)).is_zero());

    std::mt19937_64 rng(9);
    for (auto Fp : {qp(3), unram(5, 2), eis(3, {-3, 0})}) {
        const LocalField* L = Fp.get();
        auto G = FormalGroup::make(Fp, ModelKind::Special, 20, M);
        Series one = G->a_mult(Scalar::from_int(L, 1, M));
        CHECK(compare(one, Series::monomial(Scalar::from_int(L, 1, M), 1)).equal);
        Scalar a = rand_int_scalar(L, rng, M), c = rand_int_scalar(L, rng, M);
        Series A = G->a_mult(a), C = G->a_mult(c);
        CHECK(A.coeff(1).equals(a));
        Bivariate law = G->group_law(12);
        CHECK(compare(G->a_mult(a + c), G->add(law, A, C), 12).equal);
        CHECK(compare(G->a_mult(a * c), compose(A, C), 20).equal);
        // [pi] commutes with [a]
        Series fr = G->frobenius(60);
        CHECK(compare(compose(fr, A), compose(A, fr, 20)).equal);
        // precision loss stays logarithmic
        CHECK(A.min_prec() >= M - 3);
    }
}

TEST_CASE("special p=3: [2] against exp(2 log)") {
    auto F = qp(3);
    const LocalField* K = F.get();
    auto G = FormalGroup::make(F, ModelKind::Special, 16, M);
    Series two = G->a_mult(Scalar::from_int(K, 2, M));
    Series viaexp = compose(G->exp(), G->log().scale(Scalar::from_int(K, 2, 60)));
    SeriesCompare cmp = compare(two, viaexp, 16);
    CHECK(cmp.equal);
    CHECK(cmp.count >= 15);
    CHECK(two.coeff(1).equals(Scalar::from_int(K, 2, M)));
}

TEST_CASE("exp and log are inverse") {
    for (auto F : {qp(3), qp(5), unram(3, 2)}) {
        auto G = FormalGroup::make(F, ModelKind::Special, 24, M);
        Series z = Series::monomial(Scalar::from_int(F.get(), 1, 60), 1);
        SeriesCompare c1 = compare(compose(G->exp(), G->log()), z, 24);
        SeriesCompare c2 = compare(compose(G->log(), G->exp()), z, 24);
        CHECK(c1.equal);
        CHECK(c2.equal);
        CHECK(c1.count >= 20);
    }
}

TEST_CASE("d log identities") {
    std::mt19937_64 rng(17);
    auto Q3 = qp(3);
    for (auto [F, kind] : {std::pair{Q3, ModelKind::Multiplicative}, std::pair{Q3, ModelKind::Special},
                           std::pair{unram(5, 2), ModelKind::Special}, std::pair{eis(3, {-3, 0}), ModelKind::Special}}) {
        const LocalField* K = F.get();
        auto G = FormalGroup::make(F, kind, 32, M);
        for (int t = 0; t < 4; ++t) {
            Scalar a = rand_int_scalar(K, rng, M);
            Series A = G->a_mult(a);
            CHECK(compare(compose(G->log(), A), G->log().scale(a)).equal);
            Series lhs = G->g().scale(a);
            Series rhs = compose(G->g(), A) * A.derivative();
            CHECK(compare(lhs, rhs).equal);
            CHECK(compare(lhs, rhs).min_prec >= M - 4);
        }
    }
}

TEST_CASE("Frobenius invariants are enforced") {
    auto F = qp(3);
    CHECK_THROWS_AS(FormalGroup::make(F, ModelKind::Custom, 16, M, {{0}, {3}, {1}, {1}}), Error);
    CHECK_THROWS_AS(FormalGroup::make(F, ModelKind::Custom, 16, M, {{0}, {1}, {0}, {1}}), Error);
    CHECK_THROWS_AS(FormalGroup::make(F, ModelKind::Custom, 16, M, {{0}, {3}, {0}, {0}, {1}}), Error);
    auto G = FormalGroup::make(F, ModelKind::Custom, 16, M, {{0}, {3}, {6}, {4}});
    CHECK(G->frob_degree() == 3);
    auto U = unram(5, 2);
    CHECK_THROWS_AS(FormalGroup::make(U, ModelKind::Multiplicative, 16, M), Error);
}
