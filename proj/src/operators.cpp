#include "operators.hpp"

#include <algorithm>

namespace ltc {

Scalar exact_int(const LocalField* F, long n) {
    if (n == 0) return Scalar::zero(F, kInf);
    return Scalar::from_int(F, n, kHighPrec);
}

Scalar exact_rational(const LocalField* F, long num, long den) {
    return exact_int(F, num) * exact_int(F, den).inverse();
}

namespace {

long floor_div(long a, long b) {
    long d = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
    return d;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

// p^t for t >= 0, or -1 once it would exceed 2^60
long ipow_capped(long p, long t) {
    long r = 1;
    for (long i = 0; i < t; ++i) {
        if (r > (1L << 60) / p) return -1;
        r *= p;
    }
    return r;
}

}  // namespace

std::shared_ptr<const OperatorContext> OperatorContext::make(ModelPtr G) {
    std::shared_ptr<OperatorContext> C(new OperatorContext());
    const LocalField* F = G->field();
    C->G_ = G;
    C->q_ = G->frob_degree();
    C->W_ = G->work_prec();
    const auto& fc = G->frob_coords();
    Scalar lead = Scalar::from_vec(F, fc[C->q_], 0, C->W_ + 4);
    if (!lead.is_unit()) throw Error(Err::SingularCompanion, "leading coefficient of [pi] is not a unit");
    C->lead_ = lead;
    Scalar linv = lead.inverse();
    C->a_.assign(C->q_ + 1, Scalar::zero(F, kInf));
    C->a_[0] = linv;
    for (long i = 1; i <= C->q_; ++i) {
        bool z = std::all_of(fc[i].begin(), fc[i].end(), [](const mpz_class& x) { return x == 0; });
        if (!z) C->a_[i] = (Scalar::from_vec(F, fc[i], 0, C->W_ + 4) * linv).with_prec(C->W_);
    }
    C->a_[C->q_] = Scalar::from_int(F, 1, C->W_);
    // det C_P = (-1)^q a_0 must be a unit times W
    if (!C->a_[1].is_zero() && C->a_[1].valuation() < 1)
        throw Error(Err::SingularCompanion, "linear coefficient of [pi] is not divisible by pi");
    C->frob_ = G->frobenius(C->W_ + 4);
    if (G->kind() == ModelKind::Multiplicative)
        C->ginv_ = Series(F, 0, {exact_int(F, 1), exact_int(F, 1)});
    else
        C->ginv_ = G->g().invert();
    C->pos_.push_back(Series::constant(Scalar::from_int(F, C->q_, C->W_)));
    return C;
}

std::vector<Series> OperatorContext::distinguished() const {
    std::vector<Series> out;
    out.push_back(Series::monomial(-a_[0], 1));
    for (long i = 1; i <= q_; ++i) out.push_back(Series::constant(a_[i]));
    return out;
}

std::vector<Series> OperatorContext::companion() const {
    const LocalField* F = field();
    std::vector<Series> a = distinguished();
    std::vector<Series> C(q_ * q_, Series::zero(F));
    for (long i = 1; i < q_; ++i) C[i * q_ + i - 1] = Series::constant(exact_int(F, 1));
    for (long i = 0; i < q_; ++i) C[i * q_ + q_ - 1] = -a[i];
    return C;
}

Series OperatorContext::trim(const Series& s, long k) const {
    // [W^j] s_k has valuation >= (k - q j)/(q - 1)
    long jcut = floor_div(k - (q_ - 1) * W_, q_);
    return s.truncate_below(jcut + 1, W_).compact();
}

void OperatorContext::extend_pos(long k) const {
    const LocalField* F = field();
    while (static_cast<long>(pos_.size()) <= k) {
        long m = static_cast<long>(pos_.size());
        Series s = Series::zero(F);
        if (m < q_) {
            // Newton: s_m = -m a_{q-m} - sum_{i=1}^{m-1} a_{q-i} s_{m-i}
            s = Series::constant(a_[q_ - m].mul_int(-m));
            for (long i = 1; i < m; ++i) s = s - pos_[m - i].scale(a_[q_ - i]);
        } else {
            s = pos_[m - q_].shift(1).scale(a_[0]);
            for (long i = 1; i < q_; ++i)
                if (!a_[i].is_zero()) s = s - pos_[m - q_ + i].scale(a_[i]);
        }
        pos_.push_back(trim(s, m));
    }
}

void OperatorContext::extend_neg(long k) const {
    // s_m = (lead / W) sum_{i=1}^{q} a_i s_{m+i}
    while (static_cast<long>(neg_.size()) < k) {
        long m = -static_cast<long>(neg_.size()) - 1;
        auto get = [&](long j) -> const Series& { return j >= 0 ? pos_[j] : neg_[-j - 1]; };
        extend_pos(q_);
        Series s = Series::zero(field());
        for (long i = 1; i <= q_; ++i)
            if (!a_[i].is_zero()) s = s + get(m + i).scale(a_[i]);
        neg_.push_back(trim(s.shift(-1).scale(lead_), m));
    }
}

Series OperatorContext::power_sum(long k) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (k >= 0) {
        extend_pos(k);
        return pos_[k];
    }
    extend_neg(-k);
    return neg_[-k - 1];
}

Series OperatorContext::trace_T(const Series& f) const {
    const LocalField* F = field();
    const long q = q_, p = F->p();
    const bool exact_tail = f.tail().exact();
    const long lo = f.lo(), N = f.N();
    if (!exact_tail && N <= 0) throw Error(Err::PrecisionExhausted, "trace needs the coefficients of the regular part");

    std::vector<const Series*> sums;
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (N > 0) extend_pos(N - 1);
        if (lo < 0) extend_neg(-lo);
        for (long k = lo; k < N; ++k) sums.push_back(k >= 0 ? &pos_[k] : &neg_[-k - 1]);
    }

    long jlo = std::min(0L, lo);
    long Nout = N > 0 ? floor_div(N - 1, q) + 1 : 0;
    long jhi = Nout - 1;
    long len = jhi - jlo + 1;
    std::vector<Scalar> acc(std::max(0L, len), Scalar::zero(F, kInf));
    std::vector<long> cap(std::max(0L, len), kInf);

    for (long k = lo; k < N; ++k) {
        const Scalar& c = f.coeffs()[k - lo];
        if (c.is_zero() && c.prec() >= kInf) continue;
        const Series& s = *sums[k - lo];
        for (long j = s.lo(); j < s.N(); ++j) {
            const Scalar& sj = s.coeffs()[j - s.lo()];
            if (sj.is_zero() && sj.prec() >= kInf) continue;
            acc[j - jlo] += c * sj;
        }
        long supp_lo = k < 0 ? jlo : 0;
        long below = sadd(s.negA(), c.vlow());
        for (long j = supp_lo; j < std::min(s.lo(), jhi + 1); ++j) cap[j - jlo] = std::min(cap[j - jlo], below);
    }
    if (f.negA() < kInf)
        for (long j = jlo; j <= std::min(-1L, jhi); ++j) cap[j - jlo] = std::min(cap[j - jlo], f.negA());

    Tail out_tail;
    if (!exact_tail) {
        const long alpha = f.tail().alpha, beta = f.tail().beta;
        // coefficient j < Nout receives c_k s_k for k >= N
        for (long j = 0; j <= jhi; ++j) {
            long best = kInf;
            auto consider = [&](long k) {
                long w = std::max(0L, ceil_div(k - q * j, q - 1));
                best = std::min(best, sadd(sadd(alpha, -beta * lp(p, k)), w));
            };
            consider(N);
            for (long t = lp(p, N) + 1;; ++t) {
                long k = ipow_capped(p, t);
                if (k < 0) break;
                consider(k);
            }
            cap[j - jlo] = std::min(cap[j - jlo], best);
        }
        if (alpha <= -kInf) {
            out_tail = Tail::unknown();
        } else {
            long C = 0;
            for (long t = 0;; ++t) {
                long k = ipow_capped(p, t);
                if (k < 0) break;
                C = std::max(C, beta * t - ceil_div(k, q - 1));
            }
            out_tail = Tail{sadd(alpha, -(beta * (F->f() + 1) + C)), beta};
        }
    }
    for (long i = 0; i < len; ++i) acc[i] = acc[i].with_prec(cap[i]);
    return Series(F, jlo, std::move(acc), out_tail, f.negA());
}

Series OperatorContext::psi(const Series& f) const { return trace_T(f).mul_pi_pow(-1); }

Series OperatorContext::psi_normalized(const Series& f) const {
    return trace_T(f).scale(exact_int(field(), q_).inverse());
}

Series OperatorContext::boundary_power(long m) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = boundary_.find(m);
        if (it != boundary_.end()) return it->second;
    }
    Series b = invert_boundary(frob_.pow(m), W_).compact();
    std::lock_guard<std::mutex> lock(mu_);
    boundary_.emplace(m, b);
    return b;
}

Series OperatorContext::phi(const Series& f) const {
    const LocalField* F = field();
    const long lo = f.lo(), N = f.N();
    const bool omitted = f.negA() < kInf;
    if (!f.tail().exact() && N <= 0) throw Error(Err::PrecisionExhausted, "phi needs the coefficients of the regular part");
    long rstart = omitted ? std::min(0L, lo) : lo;
    rstart = std::max(rstart, 0L);
    std::vector<Scalar> rc;
    for (long k = rstart; k < N; ++k) rc.push_back(f.coeff(k));
    Series reg(F, rstart, std::move(rc), f.tail());
    Series out = reg.coeffs().empty() && reg.tail().exact() ? Series::zero(F) : compose(reg, frob_);
    long plo = omitted ? std::min(lo, 0L) : lo;
    for (long k = std::min(N, 0L) - 1; k >= lo; --k) {
        const Scalar& c = f.coeffs()[k - lo];
        if (c.is_zero() && c.prec() >= kInf) continue;
        out = out + boundary_power(-k).scale(c);
    }
    if (omitted) {
        // omitted c_k, k < plo, contribute to exponents <= q (plo - 1)
        long top = q_ * (plo - 1);
        long A = f.negA();
        Series capped = out.map_coeffs([&](long k, const Scalar& c) { return k <= top ? c.with_prec(A) : c; });
        out = Series(F, capped.lo(), capped.coeffs(), capped.tail(), std::min(capped.negA(), A));
    }
    return out;
}

Series OperatorContext::phi_inverse(const Series& H) const {
    Series h = psi_normalized(H);
    SeriesCompare c = compare(phi(h), H);
    if (!c.equal) throw Error(Err::NotInPhiImage, "series is not in the image of phi at exponent " + std::to_string(c.first_bad));
    return h;
}

Series OperatorContext::norm(const Series& g) const {
    const LocalField* F = field();
    Series gn = g.normalize();
    if (gn.negA() < kInf || gn.coeffs().empty() || !gn.coeffs().front().is_unit())
        throw Error(Err::NonUnitArgument, "norm needs a unit times a power of Z");
    // Newton: k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i with p_i = T(g^i)
    std::vector<Series> pw{gn}, e{Series::constant(exact_int(F, 1))};
    for (long i = 2; i <= q_; ++i) pw.push_back(pw.back() * gn);
    std::vector<Series> ps;
    for (long i = 1; i <= q_; ++i) ps.push_back(trace_T(pw[i - 1]));
    for (long k = 1; k <= q_; ++k) {
        Series acc = Series::zero(F);
        for (long i = 1; i <= k; ++i) {
            Series t = e[k - i] * ps[i - 1];
            acc = (i % 2) ? acc + t : acc - t;
        }
        e.push_back(acc.scale(exact_int(F, k).inverse()));
    }
    return e[q_];
}

Series OperatorContext::a_mult(const Scalar& a) const {
    std::string key = a.str() + "@" + std::to_string(a.prec());
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = amult_.find(key);
        if (it != amult_.end()) return it->second;
    }
    Series A = G_->a_mult(a.with_prec(W_));
    std::lock_guard<std::mutex> lock(mu_);
    amult_.emplace(key, A);
    return A;
}

Series OperatorContext::gamma(const Scalar& a, const Series& f) const {
    if (!a.is_unit()) throw Error(Err::NonUnitGamma, "gamma needs a unit, got " + a.str());
    return compose(f, a_mult(a), G_->N());
}

Series OperatorContext::gamma_dual(const Scalar& a, const Series& f) const { return gamma(a, f).scale(a); }

Series OperatorContext::d_inv(const Series& f) const { return f.derivative() * ginv_; }

Series OperatorContext::nabla(const Series& f) const { return G_->log() * d_inv(f); }

Scalar OperatorContext::residue(const Series& f) const {
    Scalar r = f.coeff(-1);
    if (r.prec() <= -kInf) throw Error(Err::PrincipalPartUnknown, "coefficient of Z^-1 is not determined");
    return r;
}

Scalar OperatorContext::pairing(const Series& f, const Series& g) const {
    Scalar r = product_coeff(f * g, G_->g(), -1);
    if (r.prec() <= -kInf) throw Error(Err::PrincipalPartUnknown, "pairing residue is not determined");
    return r;
}

}  // namespace ltc
