#include "padic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ltc {

const char* err_name(Err e) {
    switch (e) {
        case Err::NonEisenstein: return "NonEisenstein";
        case Err::EvenPrimeUnsupported: return "EvenPrimeUnsupported";
        case Err::DegenerateSpec: return "DegenerateSpec";
        case Err::NonUnitInverse: return "NonUnitInverse";
        case Err::PrecisionExhausted: return "PrecisionExhausted";
        case Err::ZeroResidue: return "ZeroResidue";
        case Err::FieldMismatch: return "FieldMismatch";
        case Err::IllegalCompositionPoint: return "IllegalCompositionPoint";
        case Err::NonUnitLeading: return "NonUnitLeading";
        case Err::ResidueObstruction: return "ResidueObstruction";
        case Err::FrobeniusInvariantViolated: return "FrobeniusInvariantViolated";
        case Err::NonUnitLinearSolve: return "NonUnitLinearSolve";
        case Err::SingularCompanion: return "SingularCompanion";
        case Err::NotDescended: return "NotDescended";
        case Err::NonUnitArgument: return "NonUnitArgument";
        case Err::NonUnitGamma: return "NonUnitGamma";
        case Err::PrincipalPartUnknown: return "PrincipalPartUnknown";
        case Err::NotInPhiImage: return "NotInPhiImage";
        case Err::ModelRequiresPeriod: return "ModelRequiresPeriod";
        case Err::PrincipalPartAtZero: return "PrincipalPartAtZero";
        case Err::NotPsiOne: return "NotPsiOne";
        case Err::DescentFailed: return "DescentFailed";
        case Err::SeriesInOperatorDiverged: return "SeriesInOperatorDiverged";
        case Err::IdentityViolation: return "IdentityViolation";
        case Err::CompositeClosedFormMismatch: return "CompositeClosedFormMismatch";
        case Err::PoleAtZero: return "PoleAtZero";
        case Err::DegenerateFactor: return "DegenerateFactor";
        case Err::NoConvergence: return "NoConvergence";
        case Err::NonCommutingAction: return "NonCommutingAction";
        case Err::SignViolation: return "SignViolation";
        case Err::NotChainMap: return "NotChainMap";
        case Err::ConfigError: return "ConfigError";
        case Err::ParseError: return "ParseError";
    }
    return "Unknown";
}

long floor_log(long p, long k) {
    long r = 0;
    while (k >= p) {
        k /= p;
        ++r;
    }
    return r;
}

long vp_int(long p, long n) {
    if (n == 0) return kInf;
    if (n < 0) n = -n;
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

namespace {

constexpr long kPowCap = 3000;
constexpr long kUnitCap = 600;

bool is_prime(long n) {
    if (n < 2) return false;
    for (long i = 2; i * i <= n; ++i)
        if (n % i == 0) return false;
    return true;
}

// polynomials over F_p, coefficient vectors low to high
using PolyP = std::vector<long>;

void trim(PolyP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP poly_mod(PolyP a, const PolyP& b, long p) {
    trim(a);
    long db = static_cast<long>(b.size()) - 1;
    long inv = 1;
    for (long t = 1; t < p; ++t)
        if ((b.back() * t) % p == 1) inv = t;
    while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
        long shift = static_cast<long>(a.size()) - 1 - db;
        long c = (a.back() * inv) % p;
        for (long i = 0; i <= db; ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

bool irreducible_mod_p(const PolyP& m, long p) {
    long f = static_cast<long>(m.size()) - 1;
    for (long deg = 1; deg <= f / 2; ++deg) {
        long count = 1;
        for (long i = 0; i < deg; ++i) count *= p;
        for (long idx = 0; idx < count; ++idx) {
            PolyP g(deg + 1, 0);
            long t = idx;
            for (long i = 0; i < deg; ++i) {
                g[i] = t % p;
                t /= p;
            }
            g[deg] = 1;
            if (poly_mod(m, g, p).empty()) return false;
        }
    }
    return true;
}

PolyP find_irreducible(long p, long f) {
    long count = 1;
    for (long i = 0; i < f; ++i) count *= p;
    for (long idx = 0; idx < count; ++idx) {
        PolyP m(f + 1, 0);
        long t = idx;
        for (long i = 0; i < f; ++i) {
            m[i] = t % p;
            t /= p;
        }
        m[f] = 1;
        if (m[0] == 0) continue;
        if (irreducible_mod_p(m, p)) return m;
    }
    throw Error(Err::DegenerateSpec, "no irreducible polynomial found");
}

}  // namespace

std::shared_ptr<const LocalField> LocalField::make(const LocalFieldSpec& spec) {
    if (spec.p == 2) throw Error(Err::EvenPrimeUnsupported, "p = 2 is not supported");
    if (!is_prime(spec.p)) throw Error(Err::DegenerateSpec, "p must be an odd prime");
    std::shared_ptr<LocalField> F(new LocalField());
    F->spec_ = spec;
    F->p_ = spec.p;
    F->kind_ = spec.kind;
    switch (spec.kind) {
        case FieldKind::Qp:
            F->e_ = F->f_ = F->d_ = 1;
            F->mod_ = Vec{mpz_class(-spec.p)};
            break;
        case FieldKind::Unramified: {
            if (spec.degree < 1) throw Error(Err::DegenerateSpec, "unramified degree must be >= 1");
            F->e_ = 1;
            F->f_ = F->d_ = spec.degree;
            PolyP m = find_irreducible(spec.p, spec.degree);
            F->mod_.assign(m.begin(), m.end() - 1);
            if (spec.degree == 1) F->mod_ = Vec{mpz_class(-spec.p)};
            break;
        }
        case FieldKind::Eisenstein: {
            long e = static_cast<long>(spec.eisenstein.size());
            if (e < 1) throw Error(Err::DegenerateSpec, "empty Eisenstein polynomial");
            if (vp_int(spec.p, spec.eisenstein[0]) != 1)
                throw Error(Err::NonEisenstein, "constant term must have valuation exactly 1");
            for (long i = 1; i < e; ++i)
                if (spec.eisenstein[i] % spec.p != 0)
                    throw Error(Err::NonEisenstein, "non-leading coefficients must be divisible by p");
            F->e_ = F->d_ = e;
            F->f_ = 1;
            F->mod_.clear();
            for (long a : spec.eisenstein) F->mod_.push_back(mpz_class(a));
            break;
        }
    }
    mpz_class qq;
    mpz_ui_pow_ui(qq.get_mpz_t(), F->p_, F->f_);
    F->q_ = qq.get_si();
    F->ppow_.resize(kPowCap + 1);
    F->ppow_[0] = 1;
    for (long k = 1; k <= kPowCap; ++k) F->ppow_[k] = F->ppow_[k - 1] * F->p_;
    if (F->kind_ == FieldKind::Eisenstein) {
        // pi^e / p = -(a_0/p + a_1/p pi + ... + a_{e-1}/p pi^{e-1})
        Vec w(F->d_);
        bool small = true;
        for (long i = 0; i < F->e_; ++i) {
            w[i] = -F->mod_[i] / F->p_;
            if (i > 0 && w[i] != 0) small = false;
        }
        if (abs(w[0]) != 1) small = false;
        F->pie_over_p_ = w;
        F->small_unit_ = small;
        if (small) {
            F->p_over_pie_ = w;
        } else {
            F->p_over_pie_ = F->inv_unit(w, kUnitCap);
        }
    }
    return F;
}

std::string LocalField::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case FieldKind::Qp: os << "Q_" << p_; break;
        case FieldKind::Unramified: os << "Q_" << p_ << "(f=" << f_ << ")"; break;
        case FieldKind::Eisenstein: {
            os << "Q_" << p_ << "[x]/(x^" << e_;
            for (long i = e_ - 1; i >= 0; --i)
                if (mod_[i] != 0) os << (mod_[i] > 0 ? " + " : " - ") << mpz_class(abs(mod_[i])).get_str() << (i ? "*x" : "") << (i > 1 ? "^" + std::to_string(i) : "");
            os << ")";
            break;
        }
    }
    return os.str();
}

const mpz_class& LocalField::ppow(long k) const {
    if (k < 0 || k > kPowCap) throw Error(Err::PrecisionExhausted, "precision beyond supported cap");
    return ppow_[k];
}

long LocalField::coord_exp(long r, long i) const {
    if (r <= 0) return 0;
    if (kind_ == FieldKind::Eisenstein) {
        long t = r - i;
        return t <= 0 ? 0 : (t + e_ - 1) / e_;
    }
    return r;
}

Vec LocalField::one_vec() const {
    Vec v(d_, 0);
    v[0] = 1;
    return v;
}

void LocalField::reduce(Vec& x, long r) const {
    for (long i = 0; i < d_; ++i) {
        long m = coord_exp(r, i);
        if (m == 0) {
            x[i] = 0;
        } else {
            mpz_fdiv_r(x[i].get_mpz_t(), x[i].get_mpz_t(), ppow(m).get_mpz_t());
        }
    }
}

Vec LocalField::add(const Vec& a, const Vec& b) const {
    Vec c(d_);
    for (long i = 0; i < d_; ++i) c[i] = a[i] + b[i];
    return c;
}

Vec LocalField::mul(const Vec& a, const Vec& b) const {
    if (d_ == 1) return Vec{a[0] * b[0]};
    std::vector<mpz_class> t(2 * d_ - 1, 0);
    for (long i = 0; i < d_; ++i) {
        if (a[i] == 0) continue;
        for (long j = 0; j < d_; ++j) mpz_addmul(t[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    for (long k = 2 * d_ - 2; k >= d_; --k) {
        if (t[k] == 0) continue;
        for (long i = 0; i < d_; ++i) mpz_submul(t[k - d_ + i].get_mpz_t(), t[k].get_mpz_t(), mod_[i].get_mpz_t());
        t[k] = 0;
    }
    return Vec(t.begin(), t.begin() + d_);
}

long LocalField::val(const Vec& x) const {
    long best = kInf;
    for (long i = 0; i < d_; ++i) {
        if (x[i] == 0) continue;
        long v = static_cast<long>(mpz_remove(mpz_class().get_mpz_t(), x[i].get_mpz_t(), mpz_class(p_).get_mpz_t()));
        long w = kind_ == FieldKind::Eisenstein ? e_ * v + i : v;
        best = std::min(best, w);
    }
    return best;
}

Vec LocalField::mul_pi(const Vec& x) const {
    if (kind_ != FieldKind::Eisenstein) {
        Vec y(x);
        for (auto& c : y) c *= p_;
        return y;
    }
    Vec y(d_);
    mpz_class top = x[d_ - 1];
    for (long i = d_ - 1; i >= 1; --i) y[i] = x[i - 1];
    y[0] = 0;
    if (top != 0)
        for (long i = 0; i < d_; ++i) y[i] -= top * mod_[i];
    return y;
}

Vec LocalField::mul_pi_pow(const Vec& x, long j) const {
    if (j <= 0) return x;
    if (kind_ != FieldKind::Eisenstein) {
        Vec y(x);
        const mpz_class& pj = ppow(j);
        for (auto& c : y) c *= pj;
        return y;
    }
    Vec y(x);
    for (long t = 0; t < j; ++t) y = mul_pi(y);
    return y;
}

Vec LocalField::div_pi(const Vec& x) const { return div_pi_pow(x, 1, kInf); }

Vec LocalField::div_pi_pow(const Vec& x, long v, long r) const {
    if (v <= 0) return x;
    Vec y = x;
    if (kind_ != FieldKind::Eisenstein) {
        mpz_class pv;
        mpz_ui_pow_ui(pv.get_mpz_t(), p_, v);
        for (auto& c : y) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pv.get_mpz_t());
        return y;
    }
    // x / pi = (x pi^{e-1} / p) * (p / pi^e)
    for (long t = 0; t < v; ++t) {
        for (long i = 0; i < e_ - 1; ++i) y = mul_pi(y);
        for (auto& c : y) mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p_);
    }
    if (small_unit_) {
        if (v % 2 == 1 && p_over_pie_[0] < 0)
            for (auto& c : y) c = -c;
        return y;
    }
    if (r >= kInf) throw Error(Err::PrecisionExhausted, "division by pi needs a target precision");
    Vec c = r <= kUnitCap ? p_over_pie_ : inv_unit(pie_over_p_, r);
    y = mul(y, pow(c, mpz_class(v), r));
    reduce(y, r);
    return y;
}

Vec LocalField::pow(const Vec& x, const mpz_class& n, long r) const {
    Vec result = one_vec();
    Vec base = x;
    reduce(base, r);
    mpz_class e = n;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            result = mul(result, base);
            reduce(result, r);
        }
        e >>= 1;
        if (e > 0) {
            base = mul(base, base);
            reduce(base, r);
        }
    }
    reduce(result, r);
    return result;
}

Vec LocalField::residue_of(const Vec& x) const {
    Vec r(f_);
    for (long i = 0; i < f_; ++i) {
        r[i] = x[i];
        mpz_fdiv_r_ui(r[i].get_mpz_t(), r[i].get_mpz_t(), p_);
    }
    return r;
}

Vec LocalField::inv_unit(const Vec& u, long r) const {
    if (val(u) != 0) throw Error(Err::NonUnitInverse, "element is not a unit");
    Vec y;
    if (f_ == 1) {
        y = zero_vec();
        mpz_class c = u[0];
        mpz_fdiv_r_ui(c.get_mpz_t(), c.get_mpz_t(), p_);
        mpz_invert(y[0].get_mpz_t(), c.get_mpz_t(), mpz_class(p_).get_mpz_t());
    } else {
        y = pow(u, mpz_class(q_ - 2), 1);
    }
    long t = 1;
    while (t < r) {
        t = std::min(2 * t, r);
        Vec uy = mul(u, y);
        for (auto& c : uy) c = -c;
        uy[0] += 2;
        y = mul(y, uy);
        reduce(y, t);
    }
    reduce(y, r);
    return y;
}

Vec LocalField::residue_lift(const std::vector<long>& cls) const {
    Vec v = zero_vec();
    for (long i = 0; i < f_ && i < static_cast<long>(cls.size()); ++i) v[i] = ((cls[i] % p_) + p_) % p_;
    return v;
}

std::vector<std::vector<long>> LocalField::residue_elements_nonzero() const {
    std::vector<std::vector<long>> out;
    for (long idx = 1; idx < q_; ++idx) {
        std::vector<long> c(f_);
        long t = idx;
        for (long i = 0; i < f_; ++i) {
            c[i] = t % p_;
            t /= p_;
        }
        out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------- Scalar

Scalar Scalar::zero(const LocalField* F, long prec) {
    Scalar s;
    s.F_ = F;
    s.zero_ = true;
    s.prec_ = std::clamp(prec, -kInf, kInf);
    return s;
}

Scalar Scalar::from_vec(const LocalField* F, const Vec& x, long shift, long prec) {
    long v = F->val(x);
    if (v >= kInf || shift + v >= prec) return zero(F, prec);
    Vec u = F->div_pi_pow(x, v, prec - shift - v);
    Scalar s;
    s.F_ = F;
    s.zero_ = false;
    s.k_ = shift + v;
    s.prec_ = prec;
    F->reduce(u, prec - s.k_);
    s.u_ = std::move(u);
    return s;
}

Scalar Scalar::from_int(const LocalField* F, const mpz_class& n, long prec) {
    Vec x = F->zero_vec();
    x[0] = n;
    return from_vec(F, x, 0, prec);
}

Scalar Scalar::from_rational(const LocalField* F, long num, long den, long prec) {
    long extra = F->e() * vp_int(F->p(), den) + 1;
    return (from_int(F, num, prec + 2 * extra) * from_int(F, den, prec + 2 * extra).inverse()).with_prec(prec);
}

Scalar Scalar::uniformizer(const LocalField* F, long prec) {
    Vec x = F->one_vec();
    return from_vec(F, F->mul_pi(x), 0, prec);
}

Scalar Scalar::generator(const LocalField* F, long prec) {
    if (F->d() == 1) return uniformizer(F, prec);
    Vec x = F->zero_vec();
    x[1] = 1;
    return from_vec(F, x, 0, prec);
}

Scalar Scalar::with_prec(long A) const {
    if (A >= prec_) return *this;
    if (zero_ || A <= k_) return zero(F_, A);
    Scalar s = *this;
    s.prec_ = A;
    F_->reduce(s.u_, A - k_);
    return s;
}

Scalar Scalar::lift_prec(long A) const {
    if (zero_) return zero(F_, A);
    if (A <= prec_) return with_prec(A);
    Scalar s = *this;
    s.prec_ = A;
    return s;
}

Scalar Scalar::operator+(const Scalar& b) const {
    long A = std::min(prec_, b.prec_);
    if (zero_) return b.with_prec(A);
    if (b.zero_) return with_prec(A);
    long v = std::min(k_, b.k_);
    if (v >= A) return zero(F_, A);
    long R = A - v;
    Vec x = F_->zero_vec();
    if (k_ - v < R) x = F_->mul_pi_pow(u_, k_ - v);
    if (b.k_ - v < R) {
        Vec y = F_->mul_pi_pow(b.u_, b.k_ - v);
        for (long i = 0; i < F_->d(); ++i) x[i] += y[i];
    }
    F_->reduce(x, R);
    return from_vec(F_, x, v, A);
}

Scalar Scalar::operator-() const {
    if (zero_) return *this;
    Scalar s = *this;
    for (auto& c : s.u_) c = -c;
    F_->reduce(s.u_, prec_ - k_);
    return s;
}

Scalar Scalar::operator-(const Scalar& b) const { return *this + (-b); }

Scalar Scalar::operator*(const Scalar& b) const {
    if (zero_ || b.zero_) {
        if ((zero_ && prec_ >= kInf) || (b.zero_ && b.prec_ >= kInf)) return zero(F_, kInf);
        long A = std::min(prec_ + b.vlow(), b.prec_ + vlow());
        return zero(F_, A);
    }
    Scalar s;
    s.F_ = F_;
    s.zero_ = false;
    s.k_ = k_ + b.k_;
    long R = std::min(prec_ - k_, b.prec_ - b.k_);
    s.prec_ = s.k_ + R;
    s.u_ = F_->mul(u_, b.u_);
    F_->reduce(s.u_, R);
    return s;
}

Scalar Scalar::inverse() const {
    if (zero_) throw Error(Err::NonUnitInverse, "inverse of zero at precision " + std::to_string(prec_));
    Scalar s;
    s.F_ = F_;
    s.zero_ = false;
    long R = prec_ - k_;
    s.k_ = -k_;
    s.prec_ = s.k_ + R;
    s.u_ = F_->inv_unit(u_, R);
    return s;
}

Scalar Scalar::unit_inverse() const {
    if (zero_ || k_ != 0) throw Error(Err::NonUnitInverse, "element is not a unit");
    return inverse();
}

Scalar Scalar::mul_pi_pow(long j) const {
    if (zero_) return zero(F_, prec_ >= kInf || prec_ <= -kInf ? prec_ : prec_ + j);
    Scalar s = *this;
    s.prec_ += j;
    s.k_ += j;
    return s;
}

Scalar Scalar::mul_int(long n) const {
    if (n == 0) return zero(F_, kInf);
    if (zero_) return zero(F_, prec_ + F_->e() * vp_int(F_->p(), n));
    long extra = F_->e() * vp_int(F_->p(), n) + std::abs(vlow()) + 2;
    return *this * from_int(F_, n, prec_ + extra);
}

Scalar Scalar::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    if (n == 0) return from_int(F_, 1, std::max(prec_, 1L));
    Scalar result;
    bool have = false;
    Scalar base = *this;
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

Vec Scalar::integral_coords() const {
    if (!is_integral()) throw Error(Err::PrecisionExhausted, "element is not integral");
    if (zero_) return F_->zero_vec();
    Vec x = F_->mul_pi_pow(u_, k_);
    F_->reduce(x, prec_);
    return x;
}

namespace {

std::string pi_symbol(const LocalField* F) {
    return F->kind() == FieldKind::Eisenstein ? "pi" : std::to_string(F->p());
}

std::string gen_symbol(const LocalField* F) { return F->kind() == FieldKind::Eisenstein ? "pi" : "x"; }

std::string vec_str(const LocalField* F, const Vec& x) {
    std::string out;
    for (long i = 0; i < F->d(); ++i) {
        if (x[i] == 0) continue;
        std::string c = x[i].get_str();
        std::string term = c;
        if (i >= 1) term += "*" + gen_symbol(F) + (i > 1 ? "^" + std::to_string(i) : "");
        out += out.empty() ? term : " + " + term;
    }
    return out.empty() ? "0" : out;
}

}  // namespace

std::string Scalar::str() const {
    std::string tail = "O(" + pi_symbol(F_) + "^" + std::to_string(prec_) + ")";
    if (zero_) return tail;
    if (k_ >= 0) return vec_str(F_, integral_coords()) + " + " + tail;
    return pi_symbol(F_) + "^" + std::to_string(k_) + "*(" + vec_str(F_, u_) + ") + " + tail;
}

Scalar teichmuller(const LocalField* F, const std::vector<long>& residue_class, long prec) {
    Vec x = F->residue_lift(residue_class);
    bool nonzero = false;
    for (auto& c : x) nonzero = nonzero || c != 0;
    if (!nonzero) throw Error(Err::ZeroResidue, "Teichmueller lift of zero residue");
    mpz_class q(F->q());
    for (long it = 0; it <= prec + 2; ++it) {
        Vec y = F->pow(x, q, prec);
        if (y == x) break;
        x = y;
    }
    return Scalar::from_vec(F, x, 0, prec);
}

Scalar padic_log_one_plus(const Scalar& x, long prec) {
    const LocalField* F = x.field();
    if (x.vlow() < 1) throw Error(Err::PrecisionExhausted, "log needs a principal unit");
    long v = x.is_zero() ? x.prec() : x.valuation();
    Scalar sum = Scalar::zero(F, prec);
    Scalar xk = x;
    for (long k = 1;; ++k) {
        long lower = k * v - F->e() * floor_log(F->p(), k);
        if (lower >= prec && k > 1) break;
        Scalar term = xk * Scalar::from_int(F, k, prec + F->e() * floor_log(F->p(), k) + 2).inverse();
        sum = (k % 2 == 1) ? sum + term : sum - term;
        xk = xk * x;
    }
    return sum.with_prec(prec);
}

// ---------------------------------------------------------------- parsing

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(const std::string& t) {
        ws();
        if (s.compare(i, t.size(), t) == 0) {
            i += t.size();
            return true;
        }
        return false;
    }
    bool at_end() {
        ws();
        return i >= s.size();
    }
    long integer() {
        ws();
        size_t j = i;
        if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw Error(Err::ParseError, "expected integer at '" + s.substr(i) + "'");
        long v = std::stol(s.substr(i, j - i));
        i = j;
        return v;
    }
    mpz_class big() {
        ws();
        size_t j = i;
        if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw Error(Err::ParseError, "expected integer at '" + s.substr(i) + "'");
        std::string t = s.substr(i, j - i);
        if (!t.empty() && t[0] == '+') t = t.substr(1);
        i = j;
        return mpz_class(t);
    }
};

// parses "c0 + c1*x + c2*x^2" into integral coordinates (no O-term)
Vec parse_vec(const LocalField* F, Cursor& c) {
    Vec x = F->zero_vec();
    std::string g = gen_symbol(F);
    bool first = true;
    while (true) {
        c.ws();
        if (c.i >= c.s.size() || c.s[c.i] == ')' || c.s.compare(c.i, 2, "O(") == 0) break;
        int sign = 1;
        if (!first) {
            if (c.eat("+")) sign = 1;
            else if (c.eat("-")) sign = -1;
            else break;
            c.ws();
            if (c.s.compare(c.i, 2, "O(") == 0) break;
        }
        first = false;
        mpz_class coef = 1;
        long power = 0;
        c.ws();
        if (c.s.compare(c.i, g.size(), g) == 0) {
            c.i += g.size();
            power = 1;
        } else {
            coef = c.big();
            if (c.eat("*")) {
                if (!c.eat(g)) throw Error(Err::ParseError, "expected generator symbol");
                power = 1;
            }
        }
        if (power == 1 && c.eat("^")) power = c.integer();
        if (power < 0 || power >= F->d()) throw Error(Err::ParseError, "generator power out of range");
        x[power] += sign * coef;
    }
    return x;
}

}  // namespace

Scalar parse_scalar(const LocalField* F, const std::string& text, long default_prec) {
    Cursor c{text};
    long shift = 0;
    std::string ps = pi_symbol(F);
    size_t save = c.i;
    bool wrapped = false;
    if (c.eat(ps + "^")) {
        shift = c.integer();
        if (c.eat("*(")) {
            wrapped = true;
        } else {
            c.i = save;
            shift = 0;
        }
    }
    Vec x;
    if (c.eat("O(")) {
        x = F->zero_vec();
        c.i -= 2;
    } else {
        x = parse_vec(F, c);
    }
    if (wrapped && !c.eat(")")) throw Error(Err::ParseError, "missing ')'");
    long prec = default_prec;
    c.eat("+");
    if (c.eat("O(")) {
        if (!c.eat(ps + "^")) throw Error(Err::ParseError, "expected O(" + ps + "^M)");
        prec = c.integer();
        if (!c.eat(")")) throw Error(Err::ParseError, "missing ')' in O-term");
    }
    if (!c.at_end()) throw Error(Err::ParseError, "trailing input in scalar: " + text);
    return Scalar::from_vec(F, x, shift, prec);
}

}  // namespace ltc
