#include "coleman.hpp"

#include "error.hpp"

namespace ltc {

namespace {

long resolve(const OperatorContext& C, long N) { return N > 0 ? N : C.model().N(); }

bool all_zero(const Series& s) {
    for (const auto& c : s.coeffs())
        if (!c.is_zero()) return false;
    return true;
}

long agreement(const Series& d) {
    long v = kInf;
    for (const auto& c : d.coeffs())
        if (!c.is_zero()) v = std::min(v, c.valuation());
    return v;
}

void require_multiplicative(const OperatorContext& C, const char* what) {
    if (C.model().kind() != ModelKind::Multiplicative)
        throw Error(Err::ModelRequiresPeriod, std::string(what) + " needs the multiplicative model");
}

Scalar one_minus_pi_over_q(const OperatorContext& C, long r) {
    const LocalField* K = C.field();
    return exact_int(K, 1) - Scalar::uniformizer(K, kHighPrec).pow(r) * exact_int(K, C.q()).inverse();
}

Scalar factorial(const LocalField* K, long n) {
    Scalar f = exact_int(K, 1);
    for (long i = 2; i <= n; ++i) f *= exact_int(K, i);
    return f;
}

// g(0) a unit and g fixed by the norm
ColemanSeries regular_coherent(const OperatorContext& C, const Series& g, long N) {
    ColemanSeries cs = coleman_series(C, g, N);
    if (cs.k != 0) throw Error(Err::PoleAtZero, "g(0) = 0; pass the regular part of g");
    if (!cs.coherent) throw Error(Err::NotPsiOne, "g is not norm-coherent, so d log g is not fixed by psi");
    return cs;
}

}  // namespace

ColemanSeries coleman_series(const OperatorContext& C, const Series& g, long N) {
    N = resolve(C, N);
    Series gn = g.normalize();
    if (gn.negA() < kInf || gn.coeffs().empty() || gn.lo() < 0 || gn.lo() > 1 || !gn.coeffs().front().is_unit())
        throw Error(Err::NonUnitArgument, "expected a unit times Z^k with k in {0, 1}");
    ColemanSeries cs;
    cs.g = gn;
    cs.k = gn.lo();
    cs.norm = C.norm(gn);
    cs.defect = (cs.norm * gn.invert(N) - Series::constant(exact_int(C.field(), 1))).truncate(N);
    cs.coherent = all_zero(cs.defect);
    return cs;
}

CoherenceReport is_norm_coherent(const OperatorContext& C, const Series& g, long N) {
    ColemanSeries cs = coleman_series(C, g, N);
    return {cs.coherent, cs.defect};
}

NormProjection norm_project(const OperatorContext& C, const Series& g0, long iterations, long N) {
    N = resolve(C, N);
    NormProjection out;
    Series g = coleman_series(C, g0, N).g.truncate(N);
    for (long i = 0; i < iterations; ++i) {
        Series next = C.norm(g).truncate(N);
        long d = agreement(next - g);
        if (!out.depths.empty() && d < out.depths.back())
            throw Error(Err::NoConvergence, "agreement depth dropped from " + std::to_string(out.depths.back()) + " to " +
                                                std::to_string(d) + " at iteration " + std::to_string(i + 1));
        out.depths.push_back(d);
        g = next;
    }
    out.result = coleman_series(C, g, N);
    out.depth = out.depths.empty() ? 0 : out.depths.back();
    return out;
}

Series dlog(const OperatorContext& C, const Series& g, long N) {
    N = resolve(C, N);
    Series gn = g.normalize();
    return (C.d_inv(gn) * gn.invert(N)).truncate(N);
}

Series dlog_map(const OperatorContext& C, const ColemanSeries& g, long N) {
    Series d = dlog(C, g.g, N);
    if (g.coherent && !compare(C.psi(d), d).equal)
        throw Error(Err::IdentityViolation, "d log of a norm-coherent series is not fixed by psi");
    return d;
}

RegulatorValue regulator_value(const OperatorContext& C, const Series& g, long r, const Scalar& a, long N) {
    require_multiplicative(C, "regulator_value");
    if (r < 1) throw Error(Err::ConfigError, "regulator_value needs r >= 1");
    N = resolve(C, N);
    const LocalField* K = C.field();
    ColemanSeries cs = regular_coherent(C, g, N);
    Series F = dlog(C, cs.g, N);
    Scalar pq = Scalar::uniformizer(K, kHighPrec) * exact_int(K, C.q()).inverse();
    Series G0 = F - C.phi(F).scale(pq);
    MellinElement G = MellinElement::make(C, (C.model().log() * G0).truncate(N));
    RegulatorValue v;
    v.factor = one_minus_pi_over_q(C, r);
    v.value = a * mellin_eval(C, G, r).value;
    v.closed = a * exact_int(K, r) * v.factor * d_inv_at_zero(C, F, r - 1);
    if (!v.value.equals(v.closed))
        throw Error(Err::CompositeClosedFormMismatch, "composite " + v.value.str() + " differs from closed form " + v.closed.str());
    return v;
}

Scalar kato_value(const OperatorContext& C, const Series& g, long r, const Scalar& a, long N) {
    require_multiplicative(C, "kato_value");
    if (r < 1) throw Error(Err::ConfigError, "kato_value needs r >= 1");
    N = resolve(C, N);
    const LocalField* K = C.field();
    ColemanSeries cs = regular_coherent(C, g, N);
    Scalar e = exact_int(K, 1) - exact_int(K, 1).mul_pi_pow(-r);
    return a * e * factorial(K, r - 1).inverse() * d_inv_at_zero(C, dlog(C, cs.g, N), r - 1);
}

InterpolationCheck cw_interpolation_check(const OperatorContext& C, const Series& g, long r, const Scalar& a, long N) {
    require_multiplicative(C, "cw_interpolation_check");
    const LocalField* K = C.field();
    Scalar factor = one_minus_pi_over_q(C, std::max(r, 1L));
    if (factor.is_zero()) throw Error(Err::DegenerateFactor, "1 - pi^r/q vanishes at r = " + std::to_string(r));
    RegulatorValue reg = regulator_value(C, g, r, exact_int(K, 1), N);
    Scalar e = exact_int(K, 1) - exact_int(K, 1).mul_pi_pow(-r);
    InterpolationCheck out;
    out.lhs = factorial(K, r).inverse() * e * factor.inverse() * reg.value * a;
    out.rhs = kato_value(C, g, r, a, N);
    out.agree = out.lhs.equals(out.rhs);
    return out;
}

Series cyclotomic_coleman(const OperatorContext& C, long c, bool with_zero) {
    require_multiplicative(C, "cyclotomic_coleman");
    if (c < 1) throw Error(Err::ConfigError, "cyclotomic Coleman series needs c >= 1");
    Series e = eta(C, c, c + 1).series;
    std::vector<Scalar> coeffs;
    for (long k = 1; k <= c; ++k) coeffs.push_back(e.coeff(k));
    return Series(C.field(), with_zero ? 1 : 0, std::move(coeffs));
}

}  // namespace ltc
