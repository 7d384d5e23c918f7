#pragma once

#include <gmpxx.h>

#include <climits>
#include <memory>
#include <string>
#include <vector>

#include "error.hpp"

namespace ltc {

// Integral element of o_L as coordinates in the power basis 1, x, ..., x^{d-1}.
using Vec = std::vector<mpz_class>;

inline constexpr long kInf = LONG_MAX / 4;

enum class FieldKind { Qp, Unramified, Eisenstein };

struct LocalFieldSpec {
    long p = 3;
    FieldKind kind = FieldKind::Qp;
    long degree = 1;               // f for unramified
    std::vector<long> eisenstein;  // a_0..a_{e-1} of x^e + a_{e-1}x^{e-1} + ... + a_0
};

class Scalar;

class LocalField {
public:
    static std::shared_ptr<const LocalField> make(const LocalFieldSpec& spec);

    long p() const { return p_; }
    long e() const { return e_; }
    long f() const { return f_; }
    long d() const { return d_; }
    long q() const { return q_; }
    FieldKind kind() const { return kind_; }
    const LocalFieldSpec& spec() const { return spec_; }
    // x^d = -sum_i c_i x^i with c = modulus()
    const Vec& modulus() const { return mod_; }
    std::string describe() const;

    const mpz_class& ppow(long k) const;
    long coord_exp(long r, long i) const;  // p-exponent reducing coordinate i modulo pi^r

    Vec zero_vec() const { return Vec(d_, 0); }
    Vec one_vec() const;
    void reduce(Vec& x, long r) const;
    Vec mul(const Vec& a, const Vec& b) const;
    Vec add(const Vec& a, const Vec& b) const;
    long val(const Vec& x) const;  // kInf for zero
    Vec mul_pi(const Vec& x) const;
    Vec mul_pi_pow(const Vec& x, long j) const;
    Vec div_pi(const Vec& x) const;  // requires val >= 1
    Vec div_pi_pow(const Vec& x, long v, long r) const;  // x / pi^v modulo pi^r
    Vec inv_unit(const Vec& u, long r) const;
    Vec residue_of(const Vec& x) const;  // coordinates of x mod pi as residue-field vector
    Vec pow(const Vec& x, const mpz_class& n, long r) const;

    // residue field F_q elements are Vec of length f over [0, p)
    long residue_dim() const { return f_; }
    Vec residue_lift(const std::vector<long>& cls) const;
    std::vector<std::vector<long>> residue_elements_nonzero() const;

private:
    LocalField() = default;
    long p_ = 0, e_ = 1, f_ = 1, d_ = 1, q_ = 0;
    FieldKind kind_ = FieldKind::Qp;
    LocalFieldSpec spec_;
    Vec mod_;
    Vec pie_over_p_;
    Vec p_over_pie_;
    bool small_unit_ = false;
    std::vector<mpz_class> ppow_;
};

using FieldPtr = std::shared_ptr<const LocalField>;

// Element pi^k * u of L with u a unit (or zero), known modulo pi^A.
class Scalar {
public:
    Scalar() = default;
    static Scalar zero(const LocalField* F, long prec);
    static Scalar from_int(const LocalField* F, const mpz_class& n, long prec);
    static Scalar from_int(const LocalField* F, long n, long prec) { return from_int(F, mpz_class(n), prec); }
    static Scalar from_vec(const LocalField* F, const Vec& x, long shift, long prec);
    static Scalar from_rational(const LocalField* F, long num, long den, long prec);
    static Scalar uniformizer(const LocalField* F, long prec);
    static Scalar generator(const LocalField* F, long prec);  // x of the power basis

    const LocalField* field() const { return F_; }
    bool is_zero() const { return zero_; }
    long valuation() const { return zero_ ? prec_ : k_; }  // lower bound for zero
    long prec() const { return prec_; }
    long rel_prec() const { return zero_ ? 0 : prec_ - k_; }
    const Vec& unit() const { return u_; }
    bool is_unit() const { return !zero_ && k_ == 0; }
    bool is_integral() const { return zero_ ? prec_ >= 0 : k_ >= 0; }
    // valuation, or precision when zero: a sound lower bound
    long vlow() const { return zero_ ? prec_ : k_; }

    Scalar operator+(const Scalar& b) const;
    Scalar operator-(const Scalar& b) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& b) const;
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar operator/(const Scalar& b) const { return *this * b.inverse(); }

    Scalar inverse() const;  // field inverse, NonUnitInverse if zero at precision
    Scalar unit_inverse() const;
    Scalar mul_pi_pow(long j) const;  // multiply by pi^j, j may be negative
    Scalar mul_int(long n) const;
    Scalar pow(long n) const;
    Scalar with_prec(long A) const;  // lowers precision to min(prec, A)
    Scalar lift_prec(long A) const;  // declares the stored representative exact to A

    // integral coordinates of pi^k u reduced modulo pi^prec; requires integrality
    Vec integral_coords() const;
    bool equals(const Scalar& b) const { return (*this - b).is_zero(); }
    std::string str() const;

private:
    const LocalField* F_ = nullptr;
    bool zero_ = true;
    long k_ = 0;
    long prec_ = 0;
    Vec u_;
};

Scalar teichmuller(const LocalField* F, const std::vector<long>& residue_class, long prec);
Scalar parse_scalar(const LocalField* F, const std::string& text, long default_prec);

// p-adic logarithm of a principal unit 1 + x with v(x) >= 1 (Q_p and its extensions)
Scalar padic_log_one_plus(const Scalar& x, long prec);

long floor_log(long p, long k);  // floor(log_p k), k >= 1
long vp_int(long p, long n);

}  // namespace ltc
