#include "doctest.h"
#include "padic.hpp"

using namespace ltc;

namespace {

FieldPtr qp(long p) { return LocalField::make({p, FieldKind::Qp, 1, {}}); }

}  // namespace

TEST_CASE("make_field basic invariants") {
    auto Q3 = qp(3);
    CHECK(Q3->q() == 3);
    CHECK(Q3->e() == 1);
    CHECK(Q3->f() == 1);
    CHECK(Scalar::uniformizer(Q3.get(), 20).equals(Scalar::from_int(Q3.get(), 3, 20)));

    auto R = LocalField::make({3, FieldKind::Eisenstein, 0, {-3, 0}});
    CHECK(R->e() == 2);
    CHECK(R->f() == 1);
    CHECK(Scalar::from_int(R.get(), 3, 20).valuation() == 2);

    auto U = LocalField::make({5, FieldKind::Unramified, 2, {}});
    CHECK(U->q() == 25);
    CHECK(Scalar::uniformizer(U.get(), 20).equals(Scalar::from_int(U.get(), 5, 20)));
}

TEST_CASE("make_field rejects bad specs") {
    CHECK_THROWS_AS(LocalField::make({2, FieldKind::Qp, 1, {}}), Error);
    try {
        LocalField::make({2, FieldKind::Qp, 1, {}});
    } catch (const Error& e) {
        CHECK(e.code() == Err::EvenPrimeUnsupported);
    }
    try {
        LocalField::make({3, FieldKind::Eisenstein, 0, {-9, 0}});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Err::NonEisenstein);
    }
    try {
        LocalField::make({3, FieldKind::Eisenstein, 0, {3, 1}});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Err::NonEisenstein);
    }
}

TEST_CASE("unit inverse against geometric series") {
    auto Q3 = qp(3);
    Scalar x = Scalar::from_int(Q3.get(), 4, 4).unit_inverse();
    // 1 - 3 + 9 - 27 = -20 = 61 mod 81
    CHECK(x.integral_coords()[0] == 61);
    CHECK(x.prec() == 4);
}

TEST_CASE("valuation and precision rules") {
    auto Q3 = qp(3);
    const LocalField* F = Q3.get();
    Scalar a = Scalar::from_int(F, 9, 10);
    Scalar b = Scalar::from_int(F, 6, 8);
    Scalar c = a * b;
    CHECK(c.valuation() == 3);
    CHECK(c.prec() == std::min(10 + 1, 8 + 2));
    Scalar s = a + b;
    CHECK(s.prec() == 8);
    CHECK(s.valuation() == 1);
    Scalar inv = Scalar::from_int(F, 3, 10).inverse();
    CHECK(inv.valuation() == -1);
    CHECK((inv * Scalar::from_int(F, 3, 10)).equals(Scalar::from_int(F, 1, 9)));
    Scalar z = Scalar::from_int(F, 27, 3);
    CHECK(z.is_zero());
    CHECK(z.prec() == 3);
}

TEST_CASE("ring axioms on random triples") {
    for (auto spec : {LocalFieldSpec{3, FieldKind::Qp, 1, {}}, LocalFieldSpec{3, FieldKind::Eisenstein, 0, {-3, 0}},
                      LocalFieldSpec{5, FieldKind::Unramified, 2, {}}, LocalFieldSpec{5, FieldKind::Eisenstein, 0, {10, 5, 0}}}) {
        auto K = LocalField::make(spec);
        const LocalField* F = K.get();
        gmp_randclass rng(gmp_randinit_default);
        rng.seed(17);
        for (int t = 0; t < 30; ++t) {
            auto rnd = [&]() {
                Vec x(F->d());
                for (auto& c : x) c = rng.get_z_bits(40) - rng.get_z_bits(40);
                return Scalar::from_vec(F, x, mpz_class(rng.get_z_range(5)).get_si() - 2, 25);
            };
            Scalar a = rnd(), b = rnd(), c = rnd();
            CHECK(((a + b) * c).equals(a * c + b * c));
            CHECK(((a * b) * c).equals(a * (b * c)));
            CHECK((a * b).equals(b * a));
            CHECK(((a - b) + b).equals(a));
            if (!a.is_zero() && !b.is_zero()) CHECK((a * b).valuation() == a.valuation() + b.valuation());
            if (!a.is_zero()) CHECK((a * a.inverse()).equals(Scalar::from_int(F, 1, 10)));
        }
    }
}

TEST_CASE("teichmuller lifts") {
    auto Q3 = qp(3);
    CHECK(teichmuller(Q3.get(), {1}, 20).equals(Scalar::from_int(Q3.get(), 1, 20)));
    Scalar w = teichmuller(Q3.get(), {2}, 20);
    CHECK(w.equals(Scalar::from_int(Q3.get(), -1, 20)));
    CHECK_THROWS_AS(teichmuller(Q3.get(), {0}, 20), Error);

    auto U = LocalField::make({5, FieldKind::Unramified, 2, {}});
    for (const auto& cls : U->residue_elements_nonzero()) {
        Scalar t = teichmuller(U.get(), cls, 10);
        CHECK(t.pow(24).equals(Scalar::from_int(U.get(), 1, 10)));
        CHECK(t.pow(25).equals(t));
    }
}

TEST_CASE("scalar text round trip") {
    for (auto spec : {LocalFieldSpec{3, FieldKind::Qp, 1, {}}, LocalFieldSpec{3, FieldKind::Eisenstein, 0, {-3, 0}},
                      LocalFieldSpec{5, FieldKind::Unramified, 2, {}}}) {
        auto K = LocalField::make(spec);
        const LocalField* F = K.get();
        Vec x(F->d());
        for (long i = 0; i < F->d(); ++i) x[i] = 7 + 11 * i;
        for (long shift : {-2L, 0L, 3L}) {
            Scalar a = Scalar::from_vec(F, x, shift, 12);
            Scalar b = parse_scalar(F, a.str(), 50);
            CHECK(a.str() == b.str());
            CHECK(b.prec() == a.prec());
        }
    }
    auto Q3 = qp(3);
    CHECK(parse_scalar(Q3.get(), "8 + O(3^20)", 5).equals(Scalar::from_int(Q3.get(), 8, 20)));
}

TEST_CASE("p-adic logarithm") {
    auto Q3 = qp(3);
    const LocalField* F = Q3.get();
    Scalar x = Scalar::from_int(F, 3, 30);
    Scalar y = Scalar::from_int(F, 6, 30);
    // log((1+3)(1+6)) = log(1+3) + log(1+6)
    Scalar lhs = padic_log_one_plus(Scalar::from_int(F, 27, 30), 20);
    Scalar rhs = padic_log_one_plus(x, 20) + padic_log_one_plus(y, 20);
    CHECK(lhs.equals(rhs));
    CHECK(padic_log_one_plus(x, 20).valuation() == 1);
}
