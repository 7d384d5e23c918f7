#include "series.hpp"

#include <algorithm>
#include <sstream>

namespace ltc {

long sadd(long a, long b) {
    if (a >= kInf || b >= kInf) return kInf;
    if (a <= -kInf || b <= -kInf) return -kInf;
    return std::clamp(a + b, -kInf, kInf);
}

long lp(long p, long k) { return k >= 1 ? floor_log(p, k) : 0; }

namespace {

bool exact_zero(const Scalar& s) { return s.is_zero() && s.prec() >= kInf; }

Tail combine(const Tail& a, const Tail& b) {
    if (a.exact()) return b;
    if (b.exact()) return a;
    return {std::min(a.alpha, b.alpha), std::max(a.beta, b.beta)};
}

long slope_term(long beta, long p, long k) {
    if (beta == 0) return 0;
    return beta * lp(p, k);
}

// bound for lp(i) - lp(m) when i <= m + s, s >= 0
long log_shift(long p, long s) { return s <= 0 ? 0 : lp(p, s) + 1; }

void check_same(const Series& f, const Series& g) {
    if (f.field() != g.field()) throw Error(Err::FieldMismatch, "series over different fields");
}

Scalar div_int(const Scalar& c, long n) {
    const LocalField* F = c.field();
    long shift = F->e() * vp_int(F->p(), n);
    if (c.is_zero()) return Scalar::zero(F, c.prec() >= kInf ? kInf : c.prec() - shift);
    long R = c.rel_prec();
    return c * Scalar::from_int(F, n, shift + R + 1).inverse();
}

}  // namespace

Series::Series(const LocalField* F, long lo, std::vector<Scalar> c, Tail tail, long negA)
    : F_(F), lo_(lo), c_(std::move(c)), tail_(tail), negA_(negA) {
    if (tail_.alpha <= -kInf) tail_ = Tail::unknown();
}

Series Series::zero(const LocalField* F) { return Series(F, 0, {}, Tail{}, kInf); }

Series Series::constant(const Scalar& c) { return Series(c.field(), 0, {c}); }

Series Series::monomial(const Scalar& c, long k) { return Series(c.field(), k, {c}); }

Series Series::poly(const LocalField* F, long lo, const std::vector<long>& coeffs, long prec) {
    std::vector<Scalar> c;
    for (long a : coeffs) c.push_back(a == 0 ? Scalar::zero(F, kInf) : Scalar::from_int(F, a, prec));
    return Series(F, lo, std::move(c));
}

long Series::tail_bound(long k) const {
    if (tail_.exact()) return kInf;
    if (tail_.alpha <= -kInf) return -kInf;
    return std::clamp(tail_.alpha - slope_term(tail_.beta, F_->p(), k), -kInf, kInf);
}

Scalar Series::coeff(long k) const {
    if (k < lo_) return Scalar::zero(F_, negA_);
    if (k >= N()) return Scalar::zero(F_, tail_bound(k));
    return c_[k - lo_];
}

long Series::envelope() const {
    long A = tail_.alpha;
    for (size_t i = 0; i < c_.size(); ++i) {
        long k = lo_ + static_cast<long>(i);
        A = std::min(A, sadd(c_[i].vlow(), slope_term(tail_.beta, F_->p(), k)));
    }
    return A;
}

long Series::min_valuation() const {
    long v = kInf;
    for (const auto& c : c_) v = std::min(v, c.vlow());
    return v;
}

long Series::min_prec() const {
    long v = kInf;
    for (const auto& c : c_) v = std::min(v, c.prec());
    return v;
}

bool Series::has_principal_part() const {
    if (negA_ < kInf) return true;
    for (long k = lo_; k < std::min(N(), 0L); ++k)
        if (!exact_zero(c_[k - lo_])) return true;
    return false;
}

Series Series::truncate(long Nn) const {
    if (Nn >= N()) return *this;
    long keep = std::max(0L, Nn - lo_);
    Tail t = tail_;
    long A = tail_.alpha;
    for (long k = lo_ + keep; k < N(); ++k) A = std::min(A, sadd(c_[k - lo_].vlow(), slope_term(tail_.beta, F_->p(), k)));
    if (keep == 0) A = std::min(A, negA_);
    t.alpha = A;
    std::vector<Scalar> c(c_.begin(), c_.begin() + keep);
    return Series(F_, keep == 0 ? Nn : lo_, std::move(c), t, negA_);
}

Series Series::truncate_below(long lo, long negA) const {
    if (lo <= lo_) return *this;
    long bound = negA_;
    std::vector<Scalar> c;
    for (long k = lo_; k < N(); ++k) {
        if (k < lo) bound = std::min(bound, c_[k - lo_].vlow());
        else c.push_back(c_[k - lo_]);
    }
    bound = std::min(bound, negA);
    long start = std::min(lo, N());
    return Series(F_, start, std::move(c), tail_, bound);
}

Series Series::with_prec(long A) const {
    Series r = *this;
    for (auto& c : r.c_) c = c.with_prec(A);
    if (A < kInf) {
        r.tail_ = combine(r.tail_, Tail{A, 0});
        r.negA_ = std::min(r.negA_, A);
    }
    return r;
}

Series Series::operator+(const Series& g) const {
    check_same(*this, g);
    if (F_ == nullptr) return g;
    long lo = std::min(lo_, g.lo_);
    long Nn;
    if (tail_.exact() && g.tail_.exact()) Nn = std::max(N(), g.N());
    else if (tail_.exact()) Nn = g.N();
    else if (g.tail_.exact()) Nn = N();
    else Nn = std::min(N(), g.N());
    Series a = truncate(Nn), b = g.truncate(Nn);
    Tail t = combine(a.tail_, b.tail_);
    std::vector<Scalar> c;
    c.reserve(std::max(0L, Nn - lo));
    for (long k = lo; k < Nn; ++k) c.push_back(a.coeff(k) + b.coeff(k));
    return Series(F_, lo, std::move(c), t, std::min(negA_, g.negA_));
}

Series Series::operator-() const {
    Series r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Series Series::operator-(const Series& g) const { return *this + (-g); }

Series Series::operator*(const Series& g) const {
    check_same(*this, g);
    const Series& f = *this;
    long lo = f.lo_ + g.lo_;
    long Nn;
    bool fe = f.tail_.exact(), ge = g.tail_.exact();
    if (fe && ge) Nn = f.N() + g.N() - 1;
    else if (fe) Nn = g.N() + f.lo_;
    else if (ge) Nn = f.N() + g.lo_;
    else Nn = std::min(f.N() + g.lo_, g.N() + f.lo_);

    long Af = f.envelope(), Ag = g.envelope();
    long capF = f.negA_ >= kInf ? kInf : sadd(f.negA_, g.tail_.beta == 0 ? Ag : -kInf);
    long capG = g.negA_ >= kInf ? kInf : sadd(g.negA_, f.tail_.beta == 0 ? Af : -kInf);
    long cap = std::min(capF, capG);

    Tail t;
    if (fe && ge) {
        t = Tail{};
    } else {
        long p = F_->p();
        long a = sadd(Af, Ag);
        if (a > -kInf && a < kInf) {
            a -= f.tail_.beta * log_shift(p, -g.lo_) + g.tail_.beta * log_shift(p, -f.lo_);
        }
        t = Tail{std::min(a, cap), f.tail_.beta + g.tail_.beta};
        if (t.alpha >= kInf) t = Tail{};
    }

    // Beyond the guaranteed range, keep coefficients whose precision beats the tail envelope.
    std::vector<long> extra_cap;
    if (!(fe && ge) && !t.exact()) {
        auto stored_times_tail = [](const Series& a, const Series& b, long n) {
            long c = kInf;
            if (b.tail_.exact()) return c;
            for (long i = a.lo_; i <= std::min(n - b.N(), a.N() - 1); ++i)
                c = std::min(c, sadd(a.c_[i - a.lo_].vlow(), b.tail_bound(n - i)));
            return c;
        };
        const long Nmax = f.N() + g.N() - 1;
        for (long n = Nn; n < Nmax; ++n) {
            long cn = std::min(stored_times_tail(f, g, n), stored_times_tail(g, f, n));
            if (!fe && !ge && n >= f.N() + g.N()) cn = std::min(cn, t.alpha);
            long tv = sadd(t.alpha, -slope_term(t.beta, F_->p(), n));
            if (cn <= tv) break;
            extra_cap.push_back(cn);
        }
    }
    long Nguard = Nn;
    Nn += static_cast<long>(extra_cap.size());

    std::vector<long> nzf, nzg;
    for (size_t i = 0; i < f.c_.size(); ++i)
        if (!exact_zero(f.c_[i])) nzf.push_back(static_cast<long>(i));
    for (size_t j = 0; j < g.c_.size(); ++j)
        if (!exact_zero(g.c_[j])) nzg.push_back(static_cast<long>(j));

    long len = std::max(0L, Nn - lo);
    std::vector<Scalar> c(len, Scalar::zero(F_, kInf));
    std::vector<bool> touched(len, false);
    for (long i : nzf) {
        for (long j : nzg) {
            long m = i + j;
            if (m >= len) break;
            Scalar t = f.c_[i] * g.c_[j];
            c[m] = touched[m] ? c[m] + t : t;
            touched[m] = true;
        }
    }
    if (cap < kInf)
        for (auto& x : c) x = x.with_prec(cap);
    for (size_t e = 0; e < extra_cap.size(); ++e) {
        long m = Nguard + static_cast<long>(e) - lo;
        if (m >= 0) c[m] = c[m].with_prec(extra_cap[e]);
    }

    long negA = std::min(capF, capG);
    return Series(F_, lo, std::move(c), t, negA);
}

Series Series::scale(const Scalar& s) const {
    Series r = *this;
    for (auto& c : r.c_) c = c * s;
    if (!r.tail_.exact()) r.tail_.alpha = sadd(r.tail_.alpha, s.vlow());
    if (r.negA_ < kInf) r.negA_ = sadd(r.negA_, s.vlow());
    return r;
}

Series Series::mul_pi_pow(long j) const {
    Series r = *this;
    for (auto& c : r.c_) c = c.mul_pi_pow(j);
    if (!r.tail_.exact()) r.tail_.alpha = sadd(r.tail_.alpha, j);
    if (r.negA_ < kInf) r.negA_ = sadd(r.negA_, j);
    return r;
}

Series Series::shift(long k) const {
    Series r = *this;
    r.lo_ += k;
    if (k < 0 && !r.tail_.exact() && r.tail_.beta > 0)
        r.tail_.alpha = sadd(r.tail_.alpha, -r.tail_.beta * log_shift(F_->p(), -k));
    return r;
}

Series Series::derivative() const {
    std::vector<Scalar> c;
    c.reserve(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        long k = lo_ + static_cast<long>(i);
        c.push_back(c_[i].mul_int(k));
    }
    Tail t = tail_;
    if (!t.exact()) t.alpha = sadd(t.alpha, -t.beta);
    return Series(F_, lo_ - 1, std::move(c), t, negA_);
}

Series Series::integrate() const {
    std::vector<Scalar> c;
    c.reserve(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        long k = lo_ + static_cast<long>(i);
        if (k == -1) {
            if (!c_[i].is_zero()) throw Error(Err::ResidueObstruction, "integrating a series with a Z^-1 term");
            c.push_back(Scalar::zero(F_, kInf));
            continue;
        }
        c.push_back(div_int(c_[i], k + 1));
    }
    Tail t = tail_;
    if (!t.exact()) t.beta += F_->e();
    long negA = negA_ >= kInf ? kInf : -kInf;
    return Series(F_, lo_ + 1, std::move(c), t, negA);
}

Series Series::invert(long Ntarget) const {
    if (negA_ < kInf) throw Error(Err::PrincipalPartUnknown, "cannot invert with an omitted principal part");
    size_t s = 0;
    while (s < c_.size() && exact_zero(c_[s])) ++s;
    if (s == c_.size()) throw Error(Err::NonUnitLeading, "inverse of zero series");
    const Scalar& lead = c_[s];
    if (lead.is_zero()) throw Error(Err::NonUnitLeading, "lowest coefficient vanishes at its precision");
    long l = lo_ + static_cast<long>(s);
    long n = static_cast<long>(c_.size() - s);
    if (tail_.exact()) {
        if (Ntarget >= kInf) {
            if (n == 1) return Series(F_, -l, {lead.inverse()});
            throw Error(Err::PrecisionExhausted, "inverse of a polynomial needs a truncation target");
        }
        n = std::max(0L, Ntarget + l);
    } else if (Ntarget < kInf) {
        n = std::min(n, std::max(0L, Ntarget + l));
    }
    long nu = static_cast<long>(c_.size() - s);
    auto u = [&](long i) { return i < nu ? c_[s + i] : Scalar::zero(F_, tail_bound(l + i)); };
    Scalar inv = lead.inverse();
    std::vector<Scalar> b;
    b.reserve(n);
    std::vector<long> nz;
    for (long i = 1; i < std::min(n, nu); ++i)
        if (!exact_zero(c_[s + i])) nz.push_back(i);
    for (long k = 0; k < n; ++k) {
        if (k == 0) {
            b.push_back(inv);
            continue;
        }
        Scalar acc = Scalar::zero(F_, kInf);
        for (long i : nz) {
            if (i > k) break;
            acc += u(i) * b[k - i];
        }
        if (!tail_.exact())
            for (long i = nu; i <= k; ++i) acc += u(i) * b[k - i];
        b.push_back(-(acc * inv));
    }
    // the tail of u^{-1} stays integral when u is an integral series with unit constant term
    Series useries(F_, 0, std::vector<Scalar>(c_.begin() + s, c_.end()), tail_);
    Tail t = Tail::unknown();
    if (lead.is_unit() && useries.tail_.beta == 0 && useries.envelope() >= 0) t = Tail{0, 0};
    return Series(F_, -l, std::move(b), t);
}

Series Series::pow(long n) const {
    if (n < 0) return invert().pow(-n);
    Series result = Series::constant(Scalar::from_int(F_, 1, std::max(1L, min_prec())).lift_prec(std::max(1L, min_prec())));
    if (n == 0) return result;
    Series base = *this;
    bool have = false;
    while (n > 0) {
        if (n & 1) {
            result = have ? result * base : base;
            have = true;
        }
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

Series Series::map_coeffs(const std::function<Scalar(long, const Scalar&)>& fn) const {
    Series r = *this;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = fn(lo_ + static_cast<long>(i), r.c_[i]);
    return r;
}

Series Series::normalize() const {
    Series r = *this;
    if (r.negA_ >= kInf) {
        size_t s = 0;
        while (s < r.c_.size() && exact_zero(r.c_[s])) ++s;
        if (s > 0) {
            r.c_.erase(r.c_.begin(), r.c_.begin() + s);
            r.lo_ += static_cast<long>(s);
        }
    }
    if (r.tail_.exact())
        while (!r.c_.empty() && exact_zero(r.c_.back())) r.c_.pop_back();
    return r;
}

Series Series::compact() const {
    Series r = *this;
    if (r.negA_ < kInf) {
        size_t s = 0;
        while (s < r.c_.size() && r.c_[s].is_zero() && r.c_[s].prec() >= r.negA_) ++s;
        if (s > 0) {
            r.c_.erase(r.c_.begin(), r.c_.begin() + s);
            r.lo_ += static_cast<long>(s);
        }
    }
    if (r.tail_.exact())
        while (!r.c_.empty() && exact_zero(r.c_.back())) r.c_.pop_back();
    return r;
}

// ---------------------------------------------------------------- composition

Series compose(const Series& f, const Series& g, long Ntarget) {
    check_same(f, g);
    const LocalField* F = f.field();
    Series gn = g.normalize();
    if (gn.negA() < kInf || gn.coeffs().empty() || gn.lo() < 1)
        throw Error(Err::IllegalCompositionPoint, "composition needs g(0) = 0 and no principal part");
    long w = gn.lo();
    bool need_neg = f.negA() < kInf;
    for (long k = f.lo(); k < std::min(f.N(), 0L); ++k)
        if (!exact_zero(f.coeff(k))) need_neg = true;
    if (need_neg && gn.coeffs()[0].is_zero())
        throw Error(Err::IllegalCompositionPoint, "principal part needs an invertible lowest coefficient in g");

    long Nn = Ntarget;
    long top = f.N() - 1;
    if (!f.tail().exact()) Nn = std::min(Nn, std::max(f.N(), 0L) * w);
    if (!gn.tail().exact()) {
        if (top >= 1) Nn = std::min(Nn, gn.N());
        long K = need_neg ? -f.lo() : 0;
        if (K > 0) Nn = std::min(Nn, gn.N() - (K + 1) * w);
    }
    bool fully_exact = f.tail().exact() && gn.tail().exact() && !need_neg;
    if (fully_exact && Nn >= kInf) Nn = std::max(0L, top) * (gn.N() - 1) + 1;
    if (Nn >= kInf) throw Error(Err::PrecisionExhausted, "composition needs a truncation target");

    // regular part by Horner
    Series acc = Series::zero(F);
    long kmax = std::min(top, std::max(0L, (Nn - 1) / w));
    for (long k = kmax; k >= 0; --k) {
        acc = (acc * gn).truncate(Nn);
        if (k < f.N() && k >= f.lo()) acc = acc + Series::monomial(f.coeff(k), 0);
        acc = acc.truncate(Nn);
    }
    // coefficients of f beyond its stored range
    if (!f.tail().exact()) {
        long Ag = gn.envelope();
        Tail extra = Tail::unknown();
        if (gn.tail().beta == 0 && Ag >= 0) {
            long Af = f.tail().alpha;
            extra = Tail{Af, f.tail().beta};
        }
        acc = acc + Series(F, Nn, {}, extra);
    }
    if (fully_exact) acc = Series(F, acc.lo(), acc.coeffs(), Tail{});

    if (need_neg) {
        Series h = gn.invert(Nn);
        Series neg = Series::zero(F);
        for (long k = f.lo(); k <= -1; ++k) {
            neg = (neg + Series::monomial(f.coeff(k), 0)) * h;
            neg = neg.truncate(Nn);
        }
        acc = acc + neg;
        if (f.negA() < kInf) acc = acc.with_prec(f.negA());
    }
    return acc.truncate(Nn);
}

Scalar product_coeff(const Series& f, const Series& h, long n) {
    check_same(f, h);
    const LocalField* F = f.field();
    Scalar acc = Scalar::zero(F, kInf);
    for (long i = f.lo(); i < f.N(); ++i) {
        const Scalar& fi = f.coeffs()[i - f.lo()];
        if (exact_zero(fi)) continue;
        acc += fi * h.coeff(n - i);
    }
    long cap = kInf;
    auto h_tail_env = [&]() { return h.tail().exact() ? kInf : (h.tail().beta == 0 ? h.tail().alpha : -kInf); };
    if (f.negA() < kInf) {
        // omitted f_i, i < lo_f, meet h_j with j > n - lo_f
        long hb = h_tail_env();
        long jstart = n - f.lo() + 1;
        if (jstart < h.lo()) hb = std::min(hb, h.negA());
        for (long j = std::max(jstart, h.lo()); j < h.N(); ++j) hb = std::min(hb, h.coeffs()[j - h.lo()].vlow());
        cap = std::min(cap, sadd(f.negA(), hb));
    }
    if (!f.tail().exact()) {
        // tail f_i, i >= N_f, meet h_j with j <= n - N_f
        long jmax = n - f.N();
        for (long j = h.lo(); j <= std::min(jmax, h.N() - 1); ++j)
            cap = std::min(cap, sadd(f.tail_bound(n - j), h.coeffs()[j - h.lo()].vlow()));
        if (h.negA() < kInf)
            cap = std::min(cap, f.tail().beta == 0 ? sadd(f.tail().alpha, h.negA()) : -kInf);
        if (!h.tail().exact())
            for (long i = f.N(); i <= n - h.N(); ++i) cap = std::min(cap, sadd(f.tail_bound(i), h.tail_bound(n - i)));
    }
    return acc.with_prec(cap);
}

Series invert_boundary(const Series& g, long negA) {
    const LocalField* F = g.field();
    Series gn = g.normalize();
    if (!gn.exact() || gn.coeffs().empty()) throw Error(Err::IllegalCompositionPoint, "boundary inverse needs a polynomial");
    long top = gn.N() - 1;
    const Scalar& c = gn.coeffs().back();
    if (!c.is_unit()) throw Error(Err::NonUnitLeading, "top coefficient must be a unit");
    Scalar cinv = c.inverse();
    // r = sum_{i<top} (g_i / c) Z^{i-top}
    std::vector<Scalar> rc;
    long mu = kInf;
    for (long i = gn.lo(); i < top; ++i) {
        Scalar x = gn.coeff(i) * cinv;
        rc.push_back(x);
        if (!exact_zero(x)) mu = std::min(mu, x.vlow());
    }
    if (mu < 1) throw Error(Err::IllegalCompositionPoint, "lower coefficients must be divisible by pi");
    Series r(F, gn.lo() - top, std::move(rc));
    Series mr = -r;
    // the expansion is a polynomial in 1/Z: only coefficients and the omitted part get capped
    auto cap = [negA](const Series& s) {
        Series t = s.map_coeffs([negA](long, const Scalar& x) { return x.with_prec(negA); });
        return Series(t.field(), t.lo(), t.coeffs(), t.tail(), std::min(t.negA(), negA));
    };
    Series sum = Series::constant(Scalar::from_int(F, 1, negA));
    Series term = sum;
    for (long k = 1; mu < kInf && k * mu < negA; ++k) {
        term = cap(term * mr);
        sum = sum + term;
    }
    Series out = sum.scale(cinv).shift(-top);
    return cap(out);
}

// ---------------------------------------------------------------- comparison and text

SeriesCompare compare(const Series& f, const Series& g, long upto) {
    SeriesCompare out;
    long lo = std::min(f.lo(), g.lo());
    long hi;
    if (f.tail().exact() && g.tail().exact()) hi = std::max(f.N(), g.N());
    else if (f.tail().exact()) hi = g.N();
    else if (g.tail().exact()) hi = f.N();
    else hi = std::min(f.N(), g.N());
    hi = std::min(hi, upto);
    for (long k = lo; k < hi; ++k) {
        Scalar d = f.coeff(k) - g.coeff(k);
        ++out.count;
        out.min_prec = std::min(out.min_prec, d.prec());
        if (!d.is_zero() && out.equal) {
            out.equal = false;
            out.first_bad = k;
        }
    }
    return out;
}

std::string Series::str() const {
    std::ostringstream os;
    bool first = true;
    auto sep = [&]() {
        if (!first) os << " + ";
        first = false;
    };
    if (negA_ < kInf) {
        sep();
        os << "Obelow(Z^" << lo_ << "; " << negA_ << ")";
    }
    for (size_t i = 0; i < c_.size(); ++i) {
        long k = lo_ + static_cast<long>(i);
        sep();
        os << "(" << (exact_zero(c_[i]) ? std::string("0") : c_[i].str()) << ")";
        if (k != 0) os << "*Z^" << k;
    }
    if (!tail_.exact()) {
        sep();
        os << "O(Z^" << N();
        if (tail_.alpha > -kInf) os << "; " << tail_.alpha << "," << tail_.beta;
        os << ")";
    }
    if (first) os << "0";
    return os.str();
}

namespace {

std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth == 0 && ch == '+' && i > 0 && s[i - 1] == ' ' && i + 1 < s.size() && s[i + 1] == ' ') {
            out.push_back(cur);
            cur.clear();
            continue;
        }
        cur += ch;
    }
    out.push_back(cur);
    for (auto& t : out) {
        size_t a = t.find_first_not_of(" \t\n");
        size_t b = t.find_last_not_of(" \t\n");
        t = a == std::string::npos ? "" : t.substr(a, b - a + 1);
    }
    return out;
}

long to_long(const std::string& s) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw Error(Err::ParseError, "bad integer '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw Error(Err::ParseError, "bad integer '" + s + "'");
    }
}

}  // namespace

Series parse_series(const LocalField* F, const std::string& text, long default_prec) {
    std::vector<std::pair<long, Scalar>> terms;
    Tail tail;
    long Nt = kInf;
    long negA = kInf, negLo = kInf;
    for (const auto& term : split_top(text)) {
        if (term.empty()) throw Error(Err::ParseError, "empty term in series");
        if (term == "0") continue;
        if (term.rfind("Obelow(Z^", 0) == 0) {
            size_t semi = term.find(';');
            if (semi == std::string::npos || term.back() != ')') throw Error(Err::ParseError, "bad Obelow term");
            negLo = to_long(term.substr(9, semi - 9));
            std::string a = term.substr(semi + 1, term.size() - semi - 2);
            a.erase(0, a.find_first_not_of(' '));
            negA = to_long(a);
            continue;
        }
        if (term.rfind("O(Z^", 0) == 0) {
            if (term.back() != ')') throw Error(Err::ParseError, "bad O-term");
            std::string body = term.substr(4, term.size() - 5);
            size_t semi = body.find(';');
            if (semi == std::string::npos) {
                Nt = to_long(body);
                tail = Tail::unknown();
            } else {
                Nt = to_long(body.substr(0, semi));
                std::string ab = body.substr(semi + 1);
                size_t comma = ab.find(',');
                if (comma == std::string::npos) throw Error(Err::ParseError, "bad tail envelope");
                std::string a = ab.substr(0, comma);
                a.erase(0, a.find_first_not_of(' '));
                tail = Tail{to_long(a), to_long(ab.substr(comma + 1))};
            }
            continue;
        }
        long k = 0;
        std::string coef = term;
        size_t zpos = term.rfind("*Z");
        if (zpos != std::string::npos && term.find(')', zpos) == std::string::npos) {
            std::string ex = term.substr(zpos + 2);
            k = ex.empty() ? 1 : (ex[0] == '^' ? to_long(ex.substr(1)) : throw Error(Err::ParseError, "bad exponent"));
            coef = term.substr(0, zpos);
        } else if (term == "Z") {
            coef = "(1)";
            k = 1;
        } else if (term.rfind("Z^", 0) == 0) {
            k = to_long(term.substr(2));
            coef = "(1)";
        }
        if (coef.size() >= 2 && coef.front() == '(' && coef.back() == ')') coef = coef.substr(1, coef.size() - 2);
        Scalar s = coef == "0" ? Scalar::zero(F, kInf) : parse_scalar(F, coef, default_prec);
        terms.emplace_back(k, s);
    }
    long lo = negLo < kInf ? negLo : kInf;
    long hi = -kInf;
    for (auto& [k, s] : terms) {
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
    if (Nt < kInf) {
        hi = std::max(hi, Nt - 1);
        if (lo >= kInf) lo = Nt;
    }
    if (lo >= kInf) return Series::zero(F);
    std::vector<Scalar> c(std::max(0L, hi - lo + 1), Scalar::zero(F, kInf));
    for (auto& [k, s] : terms) {
        if (Nt < kInf && k >= Nt) throw Error(Err::ParseError, "term beyond the O-term");
        c[k - lo] = c[k - lo] + s;
    }
    return Series(F, lo, std::move(c), tail, negA);
}

}  // namespace ltc
