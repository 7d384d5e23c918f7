#include "explicit.hpp"

#include "error.hpp"

namespace ltc {

namespace {

void require_multiplicative(const OperatorContext& C, const char* what) {
    if (C.model().kind() != ModelKind::Multiplicative)
        throw Error(Err::ModelRequiresPeriod, std::string(what) + " needs the multiplicative model (Omega = 1)");
}

long vp(const mpz_class& x, long p) {
    if (x == 0) return kInf;
    mpz_class y = abs(x);
    long v = 0;
    while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
        y /= p;
        ++v;
    }
    return v;
}

long vp_factorial(long n, long p) {
    long v = 0;
    for (long pk = p; pk <= n; pk *= p) v += n / pk;
    return v;
}

// x with absolute precision at least A
Scalar rational(const LocalField* F, const mpq_class& x, long A) {
    if (x == 0) return Scalar::zero(F, kInf);
    long v = vp(x.get_den(), F->p());
    long P = A + 2 * v + 2;
    return (Scalar::from_int(F, x.get_num(), P) * Scalar::from_int(F, x.get_den(), P).inverse()).with_prec(A);
}

std::vector<mpq_class> bernoulli(long n) {
    std::vector<mpq_class> B(n + 1);
    B[0] = 1;
    for (long m = 1; m <= n; ++m) {
        mpq_class acc = 0;
        mpz_class c = 1;  // binom(m+1, j)
        for (long j = 0; j < m; ++j) {
            acc += c * B[j];
            c = c * (m + 1 - j) / (j + 1);
        }
        B[m] = -acc / (m + 1);
    }
    return B;
}

// E[m][j] = m! s(j, m) / j!, the coefficient of Z^j in log(1+Z)^m
std::vector<std::vector<mpq_class>> log_powers(long N) {
    std::vector<std::vector<mpz_class>> s(N, std::vector<mpz_class>(N, 0));
    s[0][0] = 1;
    for (long j = 0; j + 1 < N; ++j)
        for (long m = 0; m <= j + 1; ++m) s[j + 1][m] = (m ? s[j][m - 1] : mpz_class(0)) - mpz_class(j) * s[j][m];
    std::vector<mpz_class> fact(N, 1);
    for (long i = 1; i < N; ++i) fact[i] = fact[i - 1] * i;
    std::vector<std::vector<mpq_class>> E(N, std::vector<mpq_class>(N, 0));
    for (long m = 0; m < N; ++m)
        for (long j = m; j < N; ++j) {
            E[m][j] = mpq_class(fact[m] * s[j][m], fact[j]);
            E[m][j].canonicalize();
        }
    return E;
}

// sum_m c_m log(1+Z)^m modulo Z^N
Series from_t(const LocalField* F, const std::vector<Scalar>& c, long N, long A) {
    const long p = F->p();
    auto E = log_powers(N);
    std::vector<Scalar> out;
    for (long j = 0; j < N; ++j) {
        Scalar acc = Scalar::zero(F, kInf);
        for (long m = 0; m <= j && m < static_cast<long>(c.size()); ++m)
            if (E[m][j] != 0) acc += c[m] * rational(F, E[m][j], A + vp_factorial(j, p) + 2);
        out.push_back(acc);
    }
    return Series(F, 0, std::move(out), Tail::unknown());
}

}  // namespace

Scalar BasisTuple::log_b(long prec) const { return padic_log_one_plus(b - exact_int(b.field(), 1), prec); }

BasisTuple make_basis(const OperatorContext& C, const Scalar& b, long n) {
    require_multiplicative(C, "make_basis");
    const LocalField* F = C.field();
    if (F->kind() != FieldKind::Qp) throw Error(Err::ConfigError, "explicit elements are built over Q_p only");
    if (n < 1) throw Error(Err::ConfigError, "level n must be >= 1");
    Scalar d = b - exact_int(F, 1);
    if (d.is_zero() || d.valuation() != n)
        throw Error(Err::ConfigError, "b = " + b.str() + " is not a generator 1 + u p^" + std::to_string(n) + " of U_" + std::to_string(n));
    return {b, n};
}

BasisTuple make_basis(const OperatorContext& C, long b, long n) { return make_basis(C, exact_int(C.field(), b), n); }

Series xi_tilde(const OperatorContext& C, const BasisTuple& b, long N, long prec) {
    require_multiplicative(C, "xi_tilde");
    const LocalField* F = C.field();
    long A = prec > 0 ? prec : C.model().M();
    Scalar l = b.log_b(A + b.n + 4);
    Scalar a = l * exact_int(F, F->p()).pow(b.n).inverse();
    Series e = eta(C, a, N + 1).series;
    std::vector<Scalar> c(e.coeffs().begin() + 1, e.coeffs().end());
    return Series(F, 1, std::move(c), e.tail()).invert(N).scale(l);
}

ThetaMellin theta_mellin(const OperatorContext& C, const BasisTuple& b, long N, long prec) {
    require_multiplicative(C, "theta_mellin");
    const LocalField* F = C.field();
    const long p = F->p();
    const long A = prec > 0 ? prec : C.model().M();
    const long n = b.n;
    // q_m loses n m digits under phi^{-n} and v(j!) digits in the Z-expansion
    const long At = A + n * (N - 1) + vp_factorial(N - 1, p) + 2;
    // v(log b) = v(b - 1) for odd p
    const long nb = (b.b - exact_int(F, 1)).valuation();
    // term k has valuation >= k nb - v(k!) - 1 >= k (nb - 1/(p-1)) - 1
    const long slope = nb * (p - 1) - 1;
    if (slope <= 0)
        throw Error(Err::SeriesInOperatorDiverged, "v(log b) = " + std::to_string(nb) + " does not exceed 1/(p-1)");
    const long kmax = ((At + 1) * (p - 1) + slope - 1) / slope + 1;
    if (kmax > 20000) throw Error(Err::SeriesInOperatorDiverged, "operator series needs more than 20000 terms");

    // nabla^k eta(1) = T_k(t) eta(1), T_{k+1} = t (T_k' + T_k), so T_k[m] = S(k, m)
    Scalar lambda = b.log_b(At + n + 4);
    auto B = bernoulli(kmax);
    std::vector<mpz_class> T(N, 0);
    T[0] = 1;
    std::vector<Scalar> q(N, Scalar::zero(F, kInf));
    Scalar lk = exact_int(F, 1);
    mpz_class fact = 1;
    for (long k = 0; k <= kmax; ++k) {
        if (k > 0) {
            for (long m = N - 1; m >= 1; --m) T[m] = mpz_class(m) * T[m] + T[m - 1];
            T[0] = 0;
            lk *= lambda;
            fact *= k;
        }
        if (B[k] == 0) continue;
        mpq_class c = B[k] / mpq_class(fact);
        c.canonicalize();
        Scalar ck = rational(F, c, At + vp_factorial(k, p) + 2) * lk;
        for (long m = 0; m < N && m <= k; ++m)
            if (T[m] != 0) q[m] += ck * Scalar::from_int(F, T[m], At + 2);
    }
    for (auto& c : q) c = c.with_prec(At);

    ThetaMellin out;
    out.t_coeffs = q;
    out.terms = kmax + 1;
    out.quotient = from_t(F, q, N, At);
    out.image = (out.quotient * eta(C, 1, N).series).truncate(N);
    // phi(t) = p t, so phi^{-n} scales the t-coefficients by p^{-n m}
    std::vector<Scalar> qx;
    for (long m = 0; m < N; ++m) qx.push_back(q[m].mul_pi_pow(-n * m));
    out.xi = from_t(F, qx, N, At);
    Series back = out.xi;
    for (long i = 0; i < n; ++i) back = C.phi(back);
    SeriesCompare cmp = compare(back, out.quotient, N);
    if (!cmp.equal) throw Error(Err::DescentFailed, "phi^n(xi_b) differs from M(Theta_b)/eta(1) at Z^" + std::to_string(cmp.first_bad));
    // xi_b - log/Z lies in log O; at Z = 0 this says xi_b(0) = 1
    if (!(out.xi.coeff(0) - exact_int(F, 1)).is_zero()) throw Error(Err::DescentFailed, "xi_b(0) = " + out.xi.coeff(0).str());
    out.prec = std::min(out.xi.min_prec(), out.image.min_prec());
    return out;
}

GroupRobbaElement dirac(const OperatorContext& C, const Scalar& u, long N) {
    require_multiplicative(C, "dirac");
    const LocalField* F = C.field();
    if (!u.is_unit()) throw Error(Err::NonUnitGamma, "Dirac at a non-unit " + u.str());
    GroupRobbaElement x;
    x.label = "delta(" + u.str() + ")";
    x.D = eta(C, u, N).series.scale(u);
    Scalar d = u - exact_int(F, 1);
    if (d.vlow() >= kBaseLevel) {
        Scalar a = padic_log_one_plus(d, u.prec()) * exact_int(F, F->p()).pow(kBaseLevel).inverse();
        x.h = eta(C, a, N).series;
        x.has_descent = true;
    }
    return x;
}

GroupRobbaElement xi_hat(const OperatorContext& C, const BasisTuple& b, long N, const Scalar& u) {
    require_multiplicative(C, "xi_hat");
    const LocalField* F = C.field();
    if (b.n != kBaseLevel) throw Error(Err::ConfigError, "Xi^_b needs a basis of U_1");
    const long A = C.model().M();
    ThetaMellin th = theta_mellin(C, b, N, A);
    Series f = (th.xi * C.model().log().truncate(N + 1).normalize().invert(N)).truncate(N - 1);
    Scalar c = Scalar::uniformizer(F, kHighPrec) * exact_int(F, C.q()).inverse();
    GroupRobbaElement x;
    x.label = "Xi^(" + b.b.str() + ")";
    Series fu = f;
    if (!(u - exact_int(F, 1)).is_zero()) {
        fu = C.gamma(u, f);
        x.label += "*delta(" + u.str() + ")";
    }
    Series pf = C.phi(fu);
    x.D = (pf * eta(C, u, N + 1 - pf.lo()).series).truncate(N).scale(c * u);
    Scalar d = u - exact_int(F, 1);
    if (d.vlow() >= kBaseLevel) {
        Scalar a = d.is_zero() ? Scalar::zero(F, kInf) : padic_log_one_plus(d, A + 4) * exact_int(F, F->p()).inverse();
        Series hu = d.is_zero() ? Series::constant(exact_int(F, 1)) : eta(C, a, N).series;
        x.h = (xi_tilde(C, b, N, A) * hu).truncate(N - 1).scale(exact_int(F, C.q()).pow(kBaseLevel).inverse());
        x.has_descent = true;
    }
    return x;
}

GroupRobbaElement xi_hat(const OperatorContext& C, const BasisTuple& b, long N) {
    return xi_hat(C, b, N, exact_int(C.field(), 1));
}

GroupRobbaElement zero_element(const OperatorContext& C) {
    GroupRobbaElement x;
    x.label = "0";
    x.D = Series::zero(C.field());
    x.h = Series::zero(C.field());
    x.has_descent = true;
    return x;
}

GroupRobbaElement combine(const std::vector<Scalar>& coeffs, const std::vector<GroupRobbaElement>& parts,
                          const std::string& label) {
    if (coeffs.size() != parts.size() || parts.empty()) throw Error(Err::ConfigError, "combine needs matching nonempty lists");
    GroupRobbaElement x;
    x.label = label;
    x.has_descent = true;
    for (size_t i = 0; i < parts.size(); ++i) {
        Series d = parts[i].D.scale(coeffs[i]);
        x.D = i ? x.D + d : d;
        x.has_descent = x.has_descent && parts[i].has_descent;
        if (x.has_descent) {
            Series h = parts[i].h.scale(coeffs[i]);
            x.h = i ? x.h + h : h;
        }
    }
    if (!x.has_descent) x.h = Series();
    return x;
}

GroupRobbaElement twist_element(const OperatorContext& C, const GroupRobbaElement& x) {
    GroupRobbaElement y;
    y.label = "Tw(" + x.label + ")";
    y.D = C.d_inv(x.D);
    return y;
}

Scalar varsigma(const OperatorContext& C, const GroupRobbaElement& x) {
    require_multiplicative(C, "varsigma");
    // eta(-1) g_LT = (1+Z)^{-2}
    Scalar r = product_coeff(x.D, eta(C, -2, std::max(2L, 1 - x.D.lo())).series, -1);
    if (r.prec() <= -kInf) throw Error(Err::PrincipalPartUnknown, "varsigma residue is not determined");
    return r;
}

Scalar varrho(const OperatorContext& C, const GroupRobbaElement& x) {
    require_multiplicative(C, "varrho");
    if (!x.has_descent) throw Error(Err::DescentFailed, x.label + " carries no descent to level 1");
    const LocalField* F = C.field();
    Scalar q = exact_int(F, C.q());
    Scalar c = (q - exact_int(F, 1)) * q.inverse() *
               (q * Scalar::uniformizer(F, kHighPrec).inverse()).pow(kBaseLevel);
    return c * C.pairing(x.h, Series::constant(exact_int(F, 1)));
}

Scalar level_pairing(const OperatorContext& C, const GroupRobbaElement& x, const GroupRobbaElement& y) {
    require_multiplicative(C, "level_pairing");
    if (!x.has_descent || !y.has_descent) throw Error(Err::DescentFailed, "level pairing needs descent data on both sides");
    const LocalField* F = C.field();
    Scalar c = Scalar::uniformizer(F, kHighPrec).pow(kBaseLevel).inverse();
    return c * C.pairing(x.h, y.h);
}

ResidueIdentityReport residue_identity_check(const OperatorContext& C, const std::vector<GroupRobbaElement>& family) {
    const LocalField* F = C.field();
    Scalar q = exact_int(F, C.q());
    Scalar factor = q * (q - exact_int(F, 1)).inverse();
    ResidueIdentityReport rep;
    for (const auto& x : family) {
        ResidueIdentityEntry e;
        e.label = x.label;
        e.varsigma = varsigma(C, x);
        e.varrho = varrho(C, x);
        e.rhs = factor * e.varrho;
        e.agree = e.varsigma.equals(e.rhs);
        if (!e.agree)
            throw Error(Err::IdentityViolation, "residue identity fails for " + x.label + ": varsigma = " + e.varsigma.str() +
                                                    ", q/(q-1) varrho = " + e.rhs.str());
        rep.entries.push_back(e);
    }
    return rep;
}

}  // namespace ltc
