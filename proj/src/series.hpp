#pragma once

#include <functional>
#include <string>
#include <vector>

#include "padic.hpp"

namespace ltc {

long sadd(long a, long b);  // saturating at +-kInf
long lp(long p, long k);    // floor(log_p k) for k >= 1, 0 otherwise

// Valuation envelope for the coefficients beyond the stored range:
// v(c_k) >= alpha - beta * floor(log_p k) for k >= N. alpha = kInf means exactly zero.
struct Tail {
    long alpha = kInf;
    long beta = 0;
    bool exact() const { return alpha >= kInf; }
    static Tail exact_zero() { return {}; }
    static Tail unknown() { return {-kInf, 0}; }
};

struct SeriesCompare {
    bool equal = true;
    long min_prec = kInf;  // smallest precision among compared coefficients
    long count = 0;
    long first_bad = 0;
};

// Truncated Laurent series sum_{k >= lo} c_k Z^k over L. Coefficients lo..N-1 are stored;
// beyond N the tail envelope bounds them, below lo the omitted principal part has
// valuation >= negA (kInf: none omitted).
class Series {
public:
    Series() = default;
    Series(const LocalField* F, long lo, std::vector<Scalar> c, Tail tail = {}, long negA = kInf);

    static Series zero(const LocalField* F);
    static Series constant(const Scalar& c);
    static Series monomial(const Scalar& c, long k);
    static Series poly(const LocalField* F, long lo, const std::vector<long>& coeffs, long prec);

    const LocalField* field() const { return F_; }
    long lo() const { return lo_; }
    long N() const { return lo_ + static_cast<long>(c_.size()); }
    const Tail& tail() const { return tail_; }
    long negA() const { return negA_; }
    bool exact() const { return tail_.exact() && negA_ >= kInf; }
    const std::vector<Scalar>& coeffs() const { return c_; }

    // coefficient of Z^k with the precision implied by the envelopes
    Scalar coeff(long k) const;
    long tail_bound(long k) const;  // valuation bound for k >= N
    // v(c_k) >= env - beta * lp(k) for every k >= lo
    long envelope() const;
    long min_valuation() const;  // over stored coefficients, vlow
    long min_prec() const;        // over stored coefficients

    Series operator+(const Series& g) const;
    Series operator-(const Series& g) const;
    Series operator-() const;
    Series operator*(const Series& g) const;
    Series scale(const Scalar& s) const;
    Series shift(long k) const;  // multiply by Z^k
    Series mul_pi_pow(long j) const;  // multiply by pi^j
    Series truncate(long N) const;  // keep exponents < N, fold the rest into the tail
    Series truncate_below(long lo, long negA) const;  // drop exponents < lo, bounded by negA
    Series with_prec(long A) const;  // caps every coefficient precision
    Series derivative() const;
    Series integrate() const;
    Series invert(long Ntarget = kInf) const;  // lowest nonzero coefficient must be a unit
    Series pow(long n) const;
    Series map_coeffs(const std::function<Scalar(long, const Scalar&)>& fn) const;
    Series normalize() const;  // raises lo past exact zeros
    // drops leading coefficients already covered by the omitted-principal-part bound
    Series compact() const;

    Scalar residue() const { return coeff(-1); }
    Scalar constant_term() const { return coeff(0); }
    bool has_principal_part() const;

    std::string str() const;

private:
    const LocalField* F_ = nullptr;
    long lo_ = 0;
    std::vector<Scalar> c_;
    Tail tail_;
    long negA_ = kInf;
};

Series compose(const Series& f, const Series& g, long Ntarget = kInf);
// g = c Z^w (1 + pi h(1/Z)) with unit top coefficient c: expansion of 1/g in Z^{-1}, truncated at pi^negA
Series invert_boundary(const Series& g, long negA);

// coefficient of Z^n in f h with the precision implied by both envelopes
Scalar product_coeff(const Series& f, const Series& h, long n);

SeriesCompare compare(const Series& f, const Series& g, long upto = kInf);
Series parse_series(const LocalField* F, const std::string& text, long default_prec);

}  // namespace ltc
