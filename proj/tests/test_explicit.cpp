#include <gmpxx.h>

#include "doctest.h"
#include "error.hpp"
#include "explicit.hpp"
#include "helpers.hpp"

using namespace ltc;
using namespace ltc::testing;

namespace {

constexpr long M = 20;
constexpr long N = 24;

ContextPtr mult(long p, long n = N) { return OperatorContext::make(FormalGroup::make(qp(p), ModelKind::Multiplicative, n, M)); }

Scalar I(const LocalField* F, long n) { return exact_int(F, n); }

bool is_zero_series(const Series& s) {
    for (const auto& c : s.coeffs())
        if (!c.is_zero()) return false;
    return true;
}

Err code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Err::ConfigError;
}

// sum_m F(m l) t^m / m! with F(x) = x/(e^x - 1), e^{m l} = b^m, t = log(1+Z) from the model
Series theta_closed_form(const OperatorContext& C, long b, const Scalar& l, long n) {
    const LocalField* K = C.field();
    Series t = C.model().log().truncate(n);
    Series acc = Series::constant(I(K, 1));
    Series tm = Series::constant(I(K, 1));
    mpz_class fact = 1, bm = 1;
    for (long m = 1; m < n; ++m) {
        tm = (tm * t).truncate(n);
        fact *= m;
        bm *= b;
        Scalar Fm = l * I(K, m) * Scalar::from_int(K, bm - 1, kHighPrec).inverse();
        acc = acc + tm.scale(Fm * Scalar::from_int(K, fact, kHighPrec).inverse());
    }
    return acc.truncate(n);
}

}  // namespace

TEST_CASE("xi_tilde: simple pole with residue p^n") {
    for (long p : {3L, 5L}) {
        auto C = mult(p);
        const LocalField* K = C->field();
        for (long n : {1L, 2L})
            for (long u = 1; u < p; ++u) {
                long pn = n == 1 ? p : p * p;
                BasisTuple b = make_basis(*C, 1 + u * pn, n);
                Series x = xi_tilde(*C, b, N);
                CHECK(x.lo() == -1);
                Series zx = x.shift(1);
                CHECK(zx.coeff(-1).is_zero());
                CHECK(zx.coeff(0).equals(I(K, pn)));
                // res(xi_tilde g_LT dZ) with g_LT = 1/(1+Z)
                CHECK(product_coeff(x, eta(*C, -1, N).series, -1).equals(I(K, pn)));
                // xi_tilde ((1+Z)^a - 1) = l(b) with a = l(b)/p^n
                Scalar l = b.log_b(M + 6);
                Series e = eta(*C, l * I(K, pn).inverse(), N + 2).series - Series::constant(I(K, 1));
                Series prod = (x * e).truncate(N - 2);
                CHECK(compare(prod, Series::constant(l), N - 2).equal);
                CHECK(compare(prod, Series::constant(l), N - 2).min_prec >= M - 4);
            }
    }
    auto C = mult(3);
    CHECK(code_of([&] { make_basis(*C, 10, 1); }) == Err::ConfigError);
    CHECK(code_of([&] { make_basis(*C, 2, 1); }) == Err::ConfigError);
    auto S = OperatorContext::make(FormalGroup::make(qp(3), ModelKind::Special, N, M));
    CHECK(code_of([&] { make_basis(*S, 4, 1); }) == Err::ModelRequiresPeriod);
}

TEST_CASE("theta_mellin against the closed form") {
    for (long p : {3L, 5L}) {
        auto C = mult(p);
        const LocalField* K = C->field();
        for (long u : {1L, 2L}) {
            long bv = 1 + u * p;
            BasisTuple b = make_basis(*C, bv, 1);
            ThetaMellin th = theta_mellin(*C, b, N);
            CHECK(th.prec >= M);
            Scalar l = b.log_b(M + 10);
            Series oracle = theta_closed_form(*C, bv, l, 14);
            SeriesCompare cmp = compare(th.image, oracle, 14);
            CHECK(cmp.equal);
            CHECK(cmp.count == 14);
            CHECK(cmp.min_prec >= M - 10);
            // psi kills the Mellin image of a distribution on U_1
            CHECK(is_zero_series(C->psi(th.image)));
            // descent through phi and the normalization xi_b(0) = 1
            CHECK(compare(C->phi(th.xi), th.quotient, N).equal);
            CHECK(th.xi.coeff(0).equals(I(K, 1)));
            Series rest = th.xi - C->model().log().truncate(N + 1).truncate_below(1, kInf).shift(-1);
            CHECK(rest.coeff(0).is_zero());
            // nabla/(delta_b - 1) applied to eta(1) starts 1/l(b) + Z/(b - 1)
            Series frac = th.image.scale(l.inverse());
            CHECK(frac.coeff(0).equals(l.inverse()));
            CHECK(frac.coeff(1).equals(I(K, bv - 1).inverse()));
        }
    }
    // nabla^3 eta(1) = (t + 3t^2 + t^3) eta(1), the Touchard polynomial used by the operator series
    auto C = mult(3);
    const LocalField* K = C->field();
    Series e1 = eta(*C, 1, N).series;
    Series n3 = C->nabla(C->nabla(C->nabla(e1)));
    Series t = C->model().log();
    Series touch = (t + (t * t).scale(I(K, 3)) + t * t * t) * e1;
    CHECK(compare(n3, touch, N - 2).equal);
    // level 2
    BasisTuple b2 = make_basis(*C, 10, 2);
    ThetaMellin th2 = theta_mellin(*C, b2, N);
    CHECK(compare(C->phi(C->phi(th2.xi)), th2.quotient, N).equal);
    CHECK(th2.xi.coeff(0).equals(I(K, 1)));
    CHECK(is_zero_series(C->psi(th2.image)));
    CHECK(code_of([&] { theta_mellin(*C, make_basis(*C, 4, 1), N, 30000); }) == Err::SeriesInOperatorDiverged);
}

TEST_CASE("varsigma and varrho values") {
    for (long p : {3L, 5L}) {
        auto C = mult(p);
        const LocalField* K = C->field();
        Scalar q = I(K, p), qm = (q - I(K, 1)) * q.inverse();
        for (long bv : {1 + p, 1 + 2 * p, 1 + (p - 1) * p}) {
            BasisTuple b = make_basis(*C, bv, 1);
            GroupRobbaElement x = xi_hat(*C, b, N);
            Scalar s = varsigma(*C, x), r = varrho(*C, x);
            CHECK(s.equals(I(K, 1)));
            CHECK(s.prec() >= M);
            CHECK(r.equals(qm));
            CHECK(r.prec() >= M);
            // twisting by chi_LT keeps varsigma
            CHECK(varsigma(*C, twist_element(*C, x)).equals(I(K, 1)));
            CHECK(varsigma(*C, twist_element(*C, twist_element(*C, x))).equals(I(K, 1)));
            // <Xi^_b, delta_u> on Gamma_1 is q^{-1} aug(delta_u) = q^{-1}
            for (long u : {1L, 1 + p, 1 + 3 * p})
                CHECK(level_pairing(*C, x, dirac(*C, I(K, u), N)).equals(q.inverse()));
            for (long u : {1 + p, 1 - p}) {
                GroupRobbaElement y = xi_hat(*C, b, N, I(K, u));
                CHECK(varsigma(*C, y).equals(I(K, 1)));
                CHECK(varrho(*C, y).equals(qm));
                CHECK(varsigma(*C, twist_element(*C, y)).equals(I(K, 1)));
            }
        }
        // Diracs: the Mellin image is a power series, so both residues vanish
        for (long u : {1L, 1 + p, 1 + 2 * p}) {
            GroupRobbaElement d = dirac(*C, I(K, u), N);
            CHECK(d.has_descent);
            CHECK(varsigma(*C, d).is_zero());
            CHECK(varrho(*C, d).is_zero());
            // second route: the same residues through the operator pairing
            CHECK(C->pairing(d.h, Series::constant(I(K, 1))).is_zero());
            CHECK(C->pairing(eta(*C, -1, N).series, d.D).is_zero());
        }
        GroupRobbaElement d2 = dirac(*C, I(K, 2), N);
        CHECK_FALSE(d2.has_descent);
        CHECK(code_of([&] { varrho(*C, d2); }) == Err::DescentFailed);
        GroupRobbaElement x = xi_hat(*C, make_basis(*C, 1 + p, 1), N);
        CHECK(code_of([&] { varrho(*C, twist_element(*C, x)); }) == Err::DescentFailed);
        GroupRobbaElement mix = combine({I(K, 3), I(K, 2), I(K, -5)}, {x, dirac(*C, I(K, 1 + p), N), dirac(*C, I(K, 1), N)}, "mix");
        CHECK(varsigma(*C, mix).equals(I(K, 3)));
        CHECK(varrho(*C, mix).equals(qm * I(K, 3)));
    }
    auto C = mult(3);
    CHECK(code_of([&] { xi_hat(*C, make_basis(*C, 10, 2), N); }) == Err::ConfigError);
    auto S = OperatorContext::make(FormalGroup::make(qp(3), ModelKind::Special, N, M));
    GroupRobbaElement z = zero_element(*S);
    CHECK(code_of([&] { varsigma(*S, z); }) == Err::ModelRequiresPeriod);
}

TEST_CASE("residue identity on the family") {
    for (long p : {3L, 5L}) {
        auto C = mult(p);
        const LocalField* K = C->field();
        std::vector<GroupRobbaElement> fam;
        for (long bv : {1 + p, 1 + 2 * p}) fam.push_back(xi_hat(*C, make_basis(*C, bv, 1), N));
        GroupRobbaElement x = fam.front();
        fam.push_back(dirac(*C, I(K, 1), N));
        fam.push_back(dirac(*C, I(K, 1 + p), N));
        fam.push_back(combine({I(K, 4), I(K, -7)}, {dirac(*C, I(K, 1 + p), N), dirac(*C, I(K, 1 + 4 * p), N)}, "4d - 7d"));
        fam.push_back(xi_hat(*C, make_basis(*C, 1 + p, 1), N, I(K, 1 + p)));
        fam.push_back(combine({I(K, 2), I(K, 1)}, {x, dirac(*C, I(K, 1 - p), N)}, "2 Xi + d"));
        fam.push_back(zero_element(*C));
        ResidueIdentityReport rep = residue_identity_check(*C, fam);
        CHECK(rep.all_agree);
        REQUIRE(rep.entries.size() == fam.size());
        CHECK(rep.entries[0].varsigma.equals(I(K, 1)));
        CHECK(rep.entries[0].rhs.equals(I(K, 1)));
        CHECK(rep.entries.back().varsigma.is_zero());
        CHECK(rep.entries.back().rhs.is_zero());
        // mismatched data: Mellin side of Xi^_b with the descent of delta_1
        GroupRobbaElement bad = x;
        bad.h = dirac(*C, I(K, 1), N).h;
        bad.label = "bad";
        CHECK(code_of([&] { residue_identity_check(*C, {bad}); }) == Err::IdentityViolation);
    }
}
