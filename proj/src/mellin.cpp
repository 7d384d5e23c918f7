#include "mellin.hpp"

#include "error.hpp"

namespace ltc {

namespace {

void require_multiplicative(const OperatorContext& C, const char* what) {
    if (C.model().kind() != ModelKind::Multiplicative)
        throw Error(Err::ModelRequiresPeriod, std::string(what) + " needs the multiplicative model (Omega = 1)");
}

Series require_power_series(const Series& F) {
    Series f = F.normalize();
    for (long k = f.lo(); k < 0; ++k)
        if (!f.coeff(k).is_zero()) throw Error(Err::PrincipalPartAtZero, "coefficient of Z^" + std::to_string(k) + " is nonzero");
    return f.lo() < 0 ? f.truncate_below(0, kInf) : f;
}

bool all_zero(const Series& s) {
    for (const auto& c : s.coeffs())
        if (!c.is_zero()) return false;
    return true;
}

}  // namespace

EtaSeries eta(const OperatorContext& C, const Scalar& a, long N) {
    require_multiplicative(C, "eta");
    const LocalField* F = C.field();
    const long p = F->p();
    if (!a.is_integral()) throw Error(Err::ConfigError, "eta needs an exponent in Z_p");
    const long A = std::min(a.prec(), kHighPrec);
    mpz_class c = a.is_zero() ? mpz_class(0) : a.integral_coords()[0];
    std::vector<Scalar> coeffs;
    mpz_class b = 1;
    for (long k = 0; k < N; ++k) {
        long prec = k == 0 ? kHighPrec : A - floor_log(p, k);
        coeffs.push_back(Scalar::from_int(F, b, prec));
        b = b * (c - k) / (k + 1);
    }
    return {a, Series(F, 0, std::move(coeffs), Tail{0, 0})};
}

EtaSeries eta(const OperatorContext& C, long a, long N) {
    require_multiplicative(C, "eta");
    const LocalField* F = C.field();
    Scalar s = exact_int(F, a);
    if (a >= 0 && a < N) {
        std::vector<Scalar> coeffs;
        mpz_class b = 1;
        for (long k = 0; k <= a; ++k) {
            coeffs.push_back(Scalar::from_int(F, b, kHighPrec));
            b = b * (a - k) / (k + 1);
        }
        return {s, Series(F, 0, std::move(coeffs))};
    }
    std::vector<Scalar> coeffs;
    mpz_class b = 1;
    for (long k = 0; k < N; ++k) {
        coeffs.push_back(Scalar::from_int(F, b, kHighPrec));
        b = b * (a - k) / (k + 1);
    }
    return {s, Series(F, 0, std::move(coeffs), Tail{0, 0})};
}

MellinElement MellinElement::make(const OperatorContext& C, const Series& G) {
    Series ps = C.psi(G);
    if (!all_zero(ps)) throw Error(Err::IdentityViolation, "psi(G) is not zero: " + ps.str());
    MellinElement m;
    m.G_ = G;
    return m;
}

MellinElement psi0_project(const OperatorContext& C, const Series& F) {
    return MellinElement::make(C, F - C.phi(C.psi_normalized(F)));
}

std::vector<Series> decompose(const OperatorContext& C, const Series& F, long n) {
    require_multiplicative(C, "decompose");
    long count = 1;
    for (long i = 0; i < n; ++i) count *= C.q();
    // (pi/q)^n phi^n psi^n = (phi psi_normalized)^n
    // an exact F keeps N coefficients through psi^n when eta carries q^n N terms
    const long Ne = F.tail().exact() ? std::max(F.N(), 1L) * count : F.N();
    std::vector<Series> out;
    for (long a = 0; a < count; ++a) {
        Series s = eta(C, -a, Ne).series * F;
        for (long i = 0; i < n; ++i) s = C.psi_normalized(s);
        for (long i = 0; i < n; ++i) s = C.phi(s);
        out.push_back(s);
    }
    return out;
}

Series reassemble(const OperatorContext& C, const std::vector<Series>& parts, long n) {
    (void)n;
    const LocalField* K = C.field();
    Series acc = Series::zero(K);
    for (size_t a = 0; a < parts.size(); ++a) {
        long N = parts[a].N();
        acc = acc + parts[a] * eta(C, static_cast<long>(a), std::max(N, 1L)).series;
    }
    return acc;
}

Scalar d_inv_at_zero(const OperatorContext& C, const Series& F, long n) {
    Series f = require_power_series(F);
    for (long i = 0; i < n; ++i) f = C.d_inv(f);
    return f.coeff(0);
}

MellinValue mellin_eval(const OperatorContext& C, const MellinElement& G, long n) {
    if (n < 0) throw Error(Err::ConfigError, "mellin_eval needs n >= 0");
    MellinValue v;
    v.value = d_inv_at_zero(C, G.series(), n);
    if (C.model().kind() != ModelKind::Multiplicative) {
        v.omega_power = -n;
        v.omega_normalized = true;
    }
    return v;
}

OneMinusPhiCheck one_minus_phi_eval(const OperatorContext& C, const Series& F, long n) {
    const LocalField* K = C.field();
    Series f = require_power_series(F);
    if (!compare(C.psi(f), f).equal) throw Error(Err::NotPsiOne, "psi(F) differs from F");
    Scalar pq = Scalar::uniformizer(K, kHighPrec) * exact_int(K, C.q()).inverse();
    MellinElement G = MellinElement::make(C, f - C.phi(f).scale(pq));
    OneMinusPhiCheck r;
    r.lhs = mellin_eval(C, G, n).value;
    r.factor = exact_int(K, 1) - Scalar::uniformizer(K, kHighPrec).pow(n + 1) * exact_int(K, C.q()).inverse();
    r.rhs = r.factor * d_inv_at_zero(C, f, n);
    r.agree = r.lhs.equals(r.rhs);
    return r;
}

MellinElement twist(const OperatorContext& C, const MellinElement& G) {
    require_multiplicative(C, "twist");
    return MellinElement::make(C, C.d_inv(G.series()));
}

}  // namespace ltc
