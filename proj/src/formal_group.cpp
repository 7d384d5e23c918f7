#include "formal_group.hpp"

#include <algorithm>
#include <sstream>

namespace ltc {

const char* model_name(ModelKind k) {
    switch (k) {
        case ModelKind::Special: return "special";
        case ModelKind::Multiplicative: return "multiplicative";
        case ModelKind::Custom: return "custom";
    }
    return "unknown";
}

ModelKind parse_model(const std::string& s) {
    if (s == "special") return ModelKind::Special;
    if (s == "multiplicative") return ModelKind::Multiplicative;
    if (s == "custom") return ModelKind::Custom;
    throw Error(Err::ConfigError, "unknown model '" + s + "'");
}

Scalar Bivariate::at(long i, long j) const {
    if (i < 0 || j < 0) return Scalar::zero(F, kInf);
    if (i + j >= D) return Scalar::zero(F, -kInf);
    return c[i * D + j];
}

Series Bivariate::slice_y(long j) const {
    std::vector<Scalar> s;
    for (long i = 0; i + j < D; ++i) s.push_back(at(i, j));
    return Series(F, 0, std::move(s), Tail::unknown());
}

std::string Bivariate::str() const {
    std::ostringstream os;
    for (long j = 0; j < D; ++j) os << "Y^" << j << ": " << slice_y(j).str() << "\n";
    return os.str();
}

namespace {

Scalar exact_coeff(const LocalField* F, const Vec& x, long prec) { return Scalar::from_vec(F, x, 0, prec); }

bool vec_zero(const Vec& v) {
    for (const auto& c : v)
        if (c != 0) return false;
    return true;
}

}  // namespace

std::shared_ptr<const FormalGroup> FormalGroup::make(FieldPtr F, ModelKind kind, long N, long M,
                                                     const std::vector<Vec>& custom) {
    if (N < 2 || M < 1) throw Error(Err::ConfigError, "precisions must satisfy N >= 2, M >= 1");
    std::shared_ptr<FormalGroup> G(new FormalGroup());
    G->F_ = F;
    G->kind_ = kind;
    G->N_ = N;
    G->M_ = M;
    G->W_ = M + 12 + 2 * F->e() * (floor_log(F->p(), N) + 1);
    const LocalField* K = F.get();
    long q = K->q();
    Vec piv = K->mul_pi(K->one_vec());
    switch (kind) {
        case ModelKind::Special: {
            G->frob_.assign(q + 1, K->zero_vec());
            G->frob_[1] = piv;
            G->frob_[q] = K->one_vec();
            break;
        }
        case ModelKind::Multiplicative: {
            if (K->kind() != FieldKind::Qp && !(K->d() == 1))
                throw Error(Err::DegenerateSpec, "the multiplicative model needs L = Q_p");
            long p = K->p();
            G->frob_.assign(p + 1, K->zero_vec());
            mpz_class b = 1;
            for (long k = 1; k <= p; ++k) {
                b = b * (p - k + 1) / k;
                G->frob_[k][0] = b;
            }
            break;
        }
        case ModelKind::Custom: {
            G->frob_ = custom;
            while (!G->frob_.empty() && vec_zero(G->frob_.back())) G->frob_.pop_back();
            if (static_cast<long>(G->frob_.size()) != q + 1)
                throw Error(Err::FrobeniusInvariantViolated, "custom Frobenius must be a polynomial of degree q");
            for (auto& v : G->frob_)
                if (static_cast<long>(v.size()) != K->d()) throw Error(Err::ConfigError, "coefficient has the wrong dimension");
            break;
        }
    }
    // invariants: [pi] = pi Z mod deg 2, [pi] = Z^q mod pi
    long P = G->W_ + 4;
    if (!exact_coeff(K, G->frob_[0], P).is_zero())
        throw Error(Err::FrobeniusInvariantViolated, "[pi](0) must vanish");
    if (!(exact_coeff(K, G->frob_[1], P) - Scalar::uniformizer(K, P)).is_zero())
        throw Error(Err::FrobeniusInvariantViolated, "linear coefficient must be pi");
    for (long k = 2; k < static_cast<long>(G->frob_.size()); ++k) {
        Scalar c = exact_coeff(K, G->frob_[k], P);
        Scalar target = k == q ? Scalar::from_int(K, 1, P) : Scalar::zero(K, kInf);
        if ((c - target).vlow() < 1) throw Error(Err::FrobeniusInvariantViolated, "[pi] must reduce to Z^q mod pi");
    }
    G->build();
    return G;
}

std::string FormalGroup::describe() const {
    std::ostringstream os;
    os << model_name(kind_) << " model over " << F_->describe() << ": [pi](Z) = " << frobenius(M_).str();
    return os.str();
}

Scalar FormalGroup::q_over_pi(long prec) const {
    return Scalar::from_int(F_.get(), F_->q(), prec + 1) * pi(prec + 1).inverse();
}

Series FormalGroup::frobenius(long prec) const {
    std::vector<Scalar> c;
    for (const auto& v : frob_) c.push_back(vec_zero(v) ? Scalar::zero(F_.get(), kInf) : exact_coeff(F_.get(), v, prec));
    return Series(F_.get(), 0, std::move(c)).normalize();
}

namespace {

// powers f^k, k < count, truncated at Z^N, with integral tails
std::vector<Series> powers(const Series& f, long count, long N) {
    std::vector<Series> out;
    const LocalField* F = f.field();
    out.push_back(Series::constant(Scalar::from_int(F, 1, std::max(1L, f.min_prec()))).truncate(N));
    for (long k = 1; k < count; ++k) out.push_back((out.back() * f).truncate(N));
    return out;
}

}  // namespace

void FormalGroup::build() {
    const LocalField* K = F_.get();
    Series fr = frobenius(W_ + 2);
    frob_pow_ = powers(fr, N_, N_);
    // Q_j = [pi]^j [pi]'/pi is integral; g_k (1 - pi^k) = sum_{j<k} g_j [Z^k] Q_j
    Series dfr = fr.derivative();
    std::vector<Scalar> dc;
    Scalar pinv = pi(W_ + 3).inverse();
    for (long k = 0; k < dfr.N(); ++k) dc.push_back(dfr.coeff(k) * pinv);
    Series D(K, 0, dc);
    std::vector<Scalar> g(N_, Scalar::zero(K, kInf));
    g[0] = Scalar::from_int(K, 1, W_);
    std::vector<Series> Q;
    for (long j = 0; j < N_; ++j) Q.push_back((frob_pow_[j] * D).truncate(N_));
    for (long k = 1; k < N_; ++k) {
        Scalar acc = Scalar::zero(K, kInf);
        for (long j = 0; j < k; ++j) acc += g[j] * Q[j].coeff(k);
        Scalar denom = Scalar::from_int(K, 1, W_ + 1) - pi(W_ + 1).pow(k);
        g[k] = (acc * denom.inverse()).with_prec(W_);
    }
    g_ = Series(K, 0, g, Tail{0, 0});
    log_ = g_.integrate();
    // exp by reversion: e_m = -sum_{j>=2} l_j [Z^m] E^j
    std::vector<std::vector<Scalar>> P(N_, std::vector<Scalar>(N_, Scalar::zero(K, kInf)));
    std::vector<Scalar> e(N_, Scalar::zero(K, kInf));
    e[1] = Scalar::from_int(K, 1, W_);
    P[1][1] = e[1];
    for (long m = 2; m < N_; ++m) {
        for (long j = 2; j <= m; ++j) {
            Scalar acc = Scalar::zero(K, kInf);
            for (long t = j - 1; t <= m - 1; ++t) acc += P[j - 1][t] * e[m - t];
            P[j][m] = acc;
        }
        Scalar acc = Scalar::zero(K, kInf);
        for (long j = 2; j <= m; ++j) acc += log_.coeff(j) * P[j][m];
        e[m] = -acc;
        P[1][m] = e[m];
    }
    exp_ = Series(K, 1, std::vector<Scalar>(e.begin() + 1, e.end()), Tail::unknown());
}

std::vector<long> FormalGroup::lipschitz_profile(long A, long N) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = lip_cache_.find({A, N});
        if (it != lip_cache_.end()) return it->second;
    }
    // valuations of the coefficients of [pi^A] = [pi] o ... o [pi]
    const LocalField* K = F_.get();
    Series fr = frobenius(A + 2);
    Series G = Series::monomial(Scalar::from_int(K, 1, A + 2), 1);
    for (long t = 0; t < A; ++t) G = compose(G, fr, N);
    std::vector<long> lam(N, A);
    long run = A;
    for (long j = 0; j < N; ++j) {
        run = std::min(run, G.coeff(j).vlow());
        lam[j] = std::min(run, A);
    }
    std::lock_guard<std::mutex> lock(mu_);
    lip_cache_[{A, N}] = lam;
    return lam;
}

Series FormalGroup::a_mult(const Scalar& a, long N, bool exact_rep) const {
    const LocalField* K = F_.get();
    if (N <= 0) N = N_;
    if (a.field() != K) throw Error(Err::FieldMismatch, "scalar from another field");
    if (!a.is_integral()) throw Error(Err::PrecisionExhausted, "[a] needs a in o_L");
    long Aa = a.prec();
    long Wa = std::min(std::max(W_, std::min(Aa, 4 * W_)) + N + 2, 2900L);
    Scalar al = a.is_zero() ? Scalar::zero(K, kInf) : a.lift_prec(Wa);
    std::vector<Scalar> c(N, Scalar::zero(K, kInf));
    if (N > 1) c[1] = al;
    if (!al.is_zero()) {
        Series fr = frobenius(Wa + 2);
        std::vector<Series> pw = powers(fr, N, N);
        long deg = frob_degree();
        std::vector<Scalar> pk(deg + 1);
        for (long i = 0; i <= deg; ++i) pk[i] = fr.coeff(i);
        // Pw[i][m] = [Z^m] A^i, filled as the coefficients become available
        std::vector<std::vector<Scalar>> Pw(deg + 1, std::vector<Scalar>(N, Scalar::zero(K, kInf)));
        if (N > 1) Pw[1][1] = al;
        Scalar pis = pi(Wa + 2);
        for (long m = 2; m < N; ++m) {
            for (long i = 2; i <= std::min(deg, m); ++i) {
                Scalar acc = Scalar::zero(K, kInf);
                for (long t = i - 1; t <= m - 1; ++t) acc += Pw[i - 1][t] * c[m - t];
                Pw[i][m] = acc;
            }
            Scalar rhs = Scalar::zero(K, kInf);
            for (long i = 2; i <= std::min(deg, m); ++i)
                if (!pk[i].is_zero()) rhs += pk[i] * Pw[i][m];
            for (long k = 1; k < m; ++k) rhs -= c[k] * pw[k].coeff(m);
            Scalar denom = pis.pow(m) - pis;
            c[m] = rhs * denom.inverse();
            Pw[1][m] = c[m];
        }
    }
    if (!exact_rep || a.is_zero()) {
        long A = a.is_zero() ? std::min(Aa, Wa) : Aa;
        std::vector<long> lam = lipschitz_profile(std::min(A, Wa), N);
        for (long j = 1; j < N; ++j) c[j] = c[j].with_prec(lam[j]);
    }
    return Series(K, 1, std::vector<Scalar>(c.begin() + 1, c.end()), Tail{0, 0});
}

Bivariate FormalGroup::group_law(long D) const {
    const LocalField* K = F_.get();
    long Wd = W_ + D + 2;
    Bivariate B;
    B.F = K;
    B.D = D;
    B.c.assign(D * D, Scalar::zero(K, kInf));
    if (kind_ == ModelKind::Multiplicative) {
        Scalar one = Scalar::from_int(K, 1, Wd);
        if (D > 1) B.ref(1, 0) = B.ref(0, 1) = one;
        if (D > 2) B.ref(1, 1) = one;
        return B;
    }
    Series fr = frobenius(Wd + 2);
    std::vector<Series> pw = powers(fr, D, D);
    long deg = frob_degree();
    // P[k] holds F^k as a D x D array
    std::vector<std::vector<Scalar>> P(D, std::vector<Scalar>(D * D, Scalar::zero(K, kInf)));
    Scalar one = Scalar::from_int(K, 1, Wd);
    if (D > 1) {
        B.ref(1, 0) = B.ref(0, 1) = one;
        P[1][1 * D + 0] = P[1][0 * D + 1] = one;
    }
    Scalar pis = pi(Wd + 2);
    for (long d = 2; d < D; ++d) {
        for (long k = 2; k <= d; ++k) {
            for (long a = 0; a <= d; ++a) {
                long b = d - a;
                Scalar acc = Scalar::zero(K, kInf);
                for (long a1 = 0; a1 <= a; ++a1)
                    for (long b1 = 0; b1 <= b; ++b1) {
                        long deg1 = a1 + b1;
                        if (deg1 < k - 1 || deg1 > d - 1) continue;
                        const Scalar& x = P[k - 1][a1 * D + b1];
                        if (x.is_zero() && x.prec() >= kInf) continue;
                        const Scalar& y = B.c[(a - a1) * D + (b - b1)];
                        if (y.is_zero() && y.prec() >= kInf) continue;
                        acc += x * y;
                    }
                P[k][a * D + b] = acc;
            }
        }
        for (long a = 0; a <= d; ++a) {
            long b = d - a;
            Scalar rhs = Scalar::zero(K, kInf);
            for (long k = 2; k <= std::min(d, deg); ++k) {
                Scalar pk = fr.coeff(k);
                if (pk.is_zero()) continue;
                rhs += pk * P[k][a * D + b];
            }
            Scalar lhs = Scalar::zero(K, kInf);
            for (long i = 0; i <= a; ++i)
                for (long j = 0; j <= b; ++j) {
                    if (i + j >= d || i + j == 0) continue;
                    const Scalar& cij = B.c[i * D + j];
                    if (cij.is_zero() && cij.prec() >= kInf) continue;
                    lhs += cij * pw[i].coeff(a) * pw[j].coeff(b);
                }
            Scalar denom = pis.pow(d) - pis;
            Scalar cab = (rhs - lhs) * denom.inverse();
            B.ref(a, b) = cab;
            P[1][a * D + b] = cab;
        }
    }
    return B;
}

Series FormalGroup::add(const Bivariate& law, const Series& x, const Series& y) const {
    const LocalField* K = F_.get();
    long D = law.D;
    std::vector<Series> xp = powers(x, D, kInf), yp = powers(y, D, kInf);
    Series acc = Series::zero(K);
    for (long i = 0; i < D; ++i)
        for (long j = 0; i + j < D; ++j) {
            const Scalar& c = law.c[i * D + j];
            if (c.is_zero() && c.prec() >= kInf) continue;
            acc = acc + (xp[i] * yp[j]).scale(c);
        }
    long Nn = std::min(acc.N(), D);
    acc = acc.truncate(Nn);
    bool integral = x.envelope() >= 0 && y.envelope() >= 0 && x.tail().beta == 0 && y.tail().beta == 0;
    return Series(K, acc.lo(), acc.coeffs(), integral ? Tail{0, 0} : Tail::unknown());
}

}  // namespace ltc
