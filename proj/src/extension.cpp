#include "extension.hpp"

#include <algorithm>

#include "error.hpp"
#include "operators.hpp"

namespace ltc {

ExtensionRing::ExtensionRing(const LocalField* F, std::vector<Scalar> coeffs)
    : F_(F), r_(static_cast<long>(coeffs.size())), m_(std::move(coeffs)) {
    if (r_ < 1) throw Error(Err::ConfigError, "extension of degree < 1");
}

ExtensionRing::Elt ExtensionRing::zero() const { return Elt(r_, Scalar::zero(F_, kInf)); }

ExtensionRing::Elt ExtensionRing::one(long prec) const {
    Elt e = zero();
    e[0] = Scalar::from_int(F_, 1, std::min(prec, kHighPrec));
    return e;
}

ExtensionRing::Elt ExtensionRing::gen(long prec) const {
    if (r_ == 1) return from_scalar(-m_[0]);
    Elt e = zero();
    e[1] = Scalar::from_int(F_, 1, std::min(prec, kHighPrec));
    return e;
}

ExtensionRing::Elt ExtensionRing::from_scalar(const Scalar& s) const {
    Elt e = zero();
    e[0] = s;
    return e;
}

ExtensionRing::Elt ExtensionRing::add(const Elt& a, const Elt& b) const {
    Elt c(r_);
    for (long i = 0; i < r_; ++i) c[i] = a[i] + b[i];
    return c;
}

ExtensionRing::Elt ExtensionRing::sub(const Elt& a, const Elt& b) const {
    Elt c(r_);
    for (long i = 0; i < r_; ++i) c[i] = a[i] - b[i];
    return c;
}

ExtensionRing::Elt ExtensionRing::neg(const Elt& a) const {
    Elt c(r_);
    for (long i = 0; i < r_; ++i) c[i] = -a[i];
    return c;
}

ExtensionRing::Elt ExtensionRing::mul(const Elt& a, const Elt& b) const {
    std::vector<Scalar> c(2 * r_ - 1, Scalar::zero(F_, kInf));
    for (long i = 0; i < r_; ++i) {
        if (a[i].is_zero() && a[i].prec() >= kInf) continue;
        for (long j = 0; j < r_; ++j) {
            if (b[j].is_zero() && b[j].prec() >= kInf) continue;
            c[i + j] += a[i] * b[j];
        }
    }
    for (long k = 2 * r_ - 2; k >= r_; --k) {
        if (c[k].is_zero() && c[k].prec() >= kInf) continue;
        for (long i = 0; i < r_; ++i) c[k - r_ + i] -= c[k] * m_[i];
    }
    c.resize(r_);
    return c;
}

ExtensionRing::Elt ExtensionRing::scale(const Elt& a, const Scalar& s) const {
    Elt c(r_);
    for (long i = 0; i < r_; ++i) c[i] = a[i] * s;
    return c;
}

ExtensionRing::Elt ExtensionRing::pow(const Elt& a, long n, long prec) const {
    if (n < 0) return pow(inverse(a), -n, prec);
    Elt result = one(prec), base = a;
    while (n > 0) {
        if (n & 1) result = mul(result, base);
        n >>= 1;
        if (n) base = mul(base, base);
    }
    return result;
}

ExtensionRing::Elt ExtensionRing::inverse(const Elt& a) const {
    // columns of the multiplication-by-a matrix are a * y^j
    std::vector<std::vector<Scalar>> A(r_, std::vector<Scalar>(r_ + 1));
    Elt col = a;
    long P = kInf;
    for (auto& c : a) P = std::min(P, c.prec());
    for (long j = 0; j < r_; ++j) {
        for (long i = 0; i < r_; ++i) A[i][j] = col[i];
        if (j + 1 < r_) {
            Elt y = zero();
            y[1] = Scalar::from_int(F_, 1, kHighPrec);
            col = mul(col, y);
        }
    }
    for (long i = 0; i < r_; ++i) A[i][r_] = i == 0 ? Scalar::from_int(F_, 1, kHighPrec) : Scalar::zero(F_, kInf);
    for (long c = 0; c < r_; ++c) {
        long piv = -1;
        for (long i = c; i < r_; ++i)
            if (!A[i][c].is_zero() && (piv < 0 || A[i][c].valuation() < A[piv][c].valuation())) piv = i;
        if (piv < 0) throw Error(Err::NonUnitInverse, "extension element is zero at precision " + std::to_string(P));
        std::swap(A[c], A[piv]);
        Scalar inv = A[c][c].inverse();
        for (long j = c; j <= r_; ++j) A[c][j] = A[c][j] * inv;
        for (long i = 0; i < r_; ++i) {
            if (i == c || (A[i][c].is_zero() && A[i][c].prec() >= kInf)) continue;
            Scalar f = A[i][c];
            for (long j = c; j <= r_; ++j) A[i][j] -= f * A[c][j];
        }
    }
    Elt z(r_);
    for (long i = 0; i < r_; ++i) z[i] = A[i][r_];
    return z;
}

long ExtensionRing::y_valuation(const Elt& a) const {
    long v = kInf;
    for (long i = 0; i < r_; ++i) {
        long vi = a[i].vlow();
        if (vi >= kInf) continue;
        v = std::min(v, vi * r_ + i);
    }
    return v;
}

long ExtensionRing::min_prec(const Elt& a) const {
    long P = kInf;
    for (auto& c : a) P = std::min(P, c.prec());
    return P;
}

bool ExtensionRing::is_zero(const Elt& a) const {
    return std::all_of(a.begin(), a.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool ExtensionRing::in_base(const Elt& a) const {
    for (long i = 1; i < r_; ++i)
        if (!a[i].is_zero()) return false;
    return true;
}

std::string ExtensionRing::str(const Elt& a) const {
    std::string s;
    for (long i = 0; i < r_; ++i) {
        if (a[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + a[i].str() + ")";
        if (i) s += "*y^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

}  // namespace ltc
