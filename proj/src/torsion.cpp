#include "torsion.hpp"

#include <algorithm>

#include "error.hpp"

namespace ltc {

namespace {

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

bool exact_zero(const Scalar& s) { return s.is_zero() && s.prec() >= kInf; }

}  // namespace

std::shared_ptr<const TorsionRingOracle> TorsionRingOracle::make(ContextPtr ctx, long N, long M) {
    std::shared_ptr<TorsionRingOracle> O(new TorsionRingOracle());
    const LocalField* F = ctx->field();
    const long q = ctx->q(), r = q - 1;
    O->ctx_ = ctx;
    O->N_ = N;
    O->M_ = M;
    O->Wt_ = M + N + 8;
    const long Wx = O->Wt_ + 16;
    const auto& fc = ctx->model().frob_coords();
    O->frob_.assign(q + 1, Scalar::zero(F, kInf));
    for (long i = 1; i <= q; ++i) {
        bool z = std::all_of(fc[i].begin(), fc[i].end(), [](const mpz_class& x) { return x == 0; });
        if (!z) O->frob_[i] = Scalar::from_vec(F, fc[i], 0, Wx);
    }
    Scalar linv = O->frob_[q].inverse();
    std::vector<Scalar> m(r);
    for (long j = 0; j < r; ++j) m[j] = exact_zero(O->frob_[j + 1]) ? O->frob_[j + 1] : O->frob_[j + 1] * linv;
    O->R_ = ExtensionRing(F, m);
    const ExtensionRing& R = O->R_;

    // P0 and P0' evaluated at t by Horner
    std::vector<Scalar> p0(m);
    p0.push_back(exact_int(F, 1));
    std::vector<Scalar> dp0;
    for (long j = 1; j <= r; ++j) dp0.push_back(p0[j].mul_int(j));
    Elt y = R.gen(kInf);
    for (const auto& cls : F->residue_elements_nonzero()) {
        Scalar w = teichmuller(F, cls, Wx);
        Elt t = R.scale(y, w);
        for (int it = 0; it < 200; ++it) {
            Elt val = O->eval_poly(p0, t);
            if (R.is_zero(val)) break;
            Elt step = R.mul(val, R.inverse(O->eval_poly(dp0, t)));
            t = R.sub(t, step);
        }
        if (!R.is_zero(O->frobenius_at(t)))
            throw Error(Err::NotDescended, "Newton iteration did not reach a torsion point");
        O->points_.push_back(t);
    }
    for (size_t i = 0; i < O->points_.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (R.y_valuation(R.sub(O->points_[i], O->points_[j])) > 1)
                throw Error(Err::NotDescended, "torsion points are not distinct modulo y^2");
    for (const auto& t : O->points_) O->tau_.push_back(O->translate(t));
    O->powers_.resize(O->points_.size());
    return O;
}

TorsionRingOracle::Elt TorsionRingOracle::eval_poly(const std::vector<Scalar>& c, const Elt& t) const {
    Elt acc = R_.zero();
    for (long i = static_cast<long>(c.size()) - 1; i >= 0; --i) {
        acc = R_.mul(acc, t);
        acc[0] += c[i];
    }
    return acc;
}

TorsionRingOracle::Elt TorsionRingOracle::frobenius_at(const Elt& t) const { return eval_poly(frob_, t); }

TorsionRingOracle::ExtSeries TorsionRingOracle::translate(const Elt& t) const {
    const long q = ctx_->q();
    ExtSeries tau(N_, R_.zero());
    tau[0] = t;
    std::vector<ExtSeries> pw(q + 1, ExtSeries(N_, R_.zero()));
    pw[0][0] = R_.one(kInf);
    for (long i = 1; i <= q; ++i) pw[i][0] = R_.mul(pw[i - 1][0], t);
    Elt dphi = R_.zero();
    for (long i = 1; i <= q; ++i)
        if (!exact_zero(frob_[i])) dphi = R_.add(dphi, R_.scale(pw[i - 1][0], frob_[i].mul_int(i)));
    Elt dinv = R_.inverse(dphi);
    auto fill = [&](long k) {
        for (long i = 1; i <= q; ++i) {
            Elt acc = R_.zero();
            for (long j = 0; j <= k; ++j) acc = R_.add(acc, R_.mul(pw[i - 1][k - j], tau[j]));
            pw[i][k] = acc;
        }
    };
    for (long k = 1; k < N_; ++k) {
        fill(k);
        Elt rhs = R_.zero();
        if (k <= q) rhs[0] = frob_[k];
        for (long i = 1; i <= q; ++i)
            if (!exact_zero(frob_[i])) rhs = R_.sub(rhs, R_.scale(pw[i][k], frob_[i]));
        tau[k] = R_.mul(rhs, dinv);
        fill(k);
    }
    return tau;
}

const std::vector<TorsionRingOracle::ExtSeries>& TorsionRingOracle::power_table(size_t idx, long upto) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto& P = powers_[idx];
    const ExtSeries& tau = tau_[idx];
    if (P.empty()) {
        ExtSeries one(N_, R_.zero());
        one[0] = R_.one(kInf);
        P.push_back(one);
    }
    while (static_cast<long>(P.size()) < upto) {
        const ExtSeries& prev = P.back();
        ExtSeries next(N_, R_.zero());
        for (long a = 0; a < N_; ++a) {
            if (R_.is_zero(prev[a]) && R_.min_prec(prev[a]) >= kInf) continue;
            for (long b = 0; a + b < N_; ++b) next[a + b] = R_.add(next[a + b], R_.mul(prev[a], tau[b]));
        }
        P.push_back(std::move(next));
    }
    return P;
}

Series TorsionRingOracle::direct_trace(const Series& f) const {
    const LocalField* F = ctx_->field();
    if (f.lo() < 0) throw Error(Err::ConfigError, "the direct trace oracle takes power series");
    const long r = R_.degree(), Nf = f.N();
    std::vector<Elt> acc(N_, R_.zero());
    for (size_t idx = 0; idx < tau_.size(); ++idx) {
        const auto& P = power_table(idx, Nf);
        for (long i = f.lo(); i < Nf; ++i) {
            const Scalar& c = f.coeffs()[i - f.lo()];
            if (exact_zero(c)) continue;
            for (long k = 0; k < N_; ++k) acc[k] = R_.add(acc[k], R_.scale(P[i][k], c));
        }
    }
    std::vector<Scalar> out(N_);
    for (long k = 0; k < N_; ++k) {
        if (!R_.in_base(acc[k]))
            throw Error(Err::NotDescended, "coefficient " + std::to_string(k) + " of the trace is " + R_.str(acc[k]));
        Scalar c = acc[k][0] + f.coeff(k);
        if (!f.tail().exact()) {
            // omitted f_i, i >= Nf, enter Z^k with valuation >= v(f_i) + (i - k)/r
            long cap = kInf;
            std::vector<long> cand{Nf};
            for (long pk = 1; pk < 4000000; pk *= F->p())
                if (pk > Nf) cand.push_back(pk);
            for (long i : cand) cap = std::min(cap, f.tail_bound(i) + std::max(0L, ceil_div(i - k, r)));
            c = c.with_prec(cap);
        }
        out[k] = c;
    }
    return Series(F, 0, std::move(out), Tail::unknown());
}

TorsionRingOracle::ProductUnit TorsionRingOracle::translate_product_unit() const {
    const LocalField* F = ctx_->field();
    const long q = ctx_->q();
    ExtSeries prod(N_, R_.zero());
    prod[0] = R_.one(kInf);
    for (const auto& tau : tau_) {
        ExtSeries next(N_, R_.zero());
        for (long a = 0; a < N_; ++a)
            for (long b = 0; a + b < N_; ++b) next[a + b] = R_.add(next[a + b], R_.mul(prod[a], tau[b]));
        prod = std::move(next);
    }
    std::vector<Scalar> u(N_);
    Scalar d0inv = frob_[1].inverse();
    for (long k = 0; k < N_; ++k) {
        if (!R_.in_base(prod[k]))
            throw Error(Err::NotDescended, "product of translates leaves the base ring at Z^" + std::to_string(k));
        Scalar acc = prod[k][0];
        for (long j = 1; j <= std::min(k, q - 1); ++j)
            if (!exact_zero(frob_[j + 1])) acc -= u[k - j] * frob_[j + 1];
        u[k] = acc * d0inv;
    }
    ProductUnit res;
    res.constant = u[0];
    res.is_constant = std::all_of(u.begin() + 1, u.end(), [](const Scalar& s) { return s.is_zero(); });
    res.unit = Series(F, 0, std::move(u), Tail::unknown());
    return res;
}

}  // namespace ltc
