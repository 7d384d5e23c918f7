#pragma once

#include <string>
#include <vector>

#include "padic.hpp"

namespace ltc {

// o_L[y]/(m(y)) for a monic Eisenstein polynomial m of degree r; elements are
// coordinate vectors in the basis 1, y, ..., y^{r-1}.
class ExtensionRing {
public:
    using Elt = std::vector<Scalar>;

    ExtensionRing() = default;
    // m = y^r + sum_{i<r} coeffs[i] y^i
    ExtensionRing(const LocalField* F, std::vector<Scalar> coeffs);

    const LocalField* field() const { return F_; }
    long degree() const { return r_; }

    Elt zero() const;
    Elt one(long prec) const;
    Elt gen(long prec) const;  // y
    Elt from_scalar(const Scalar& s) const;

    Elt add(const Elt& a, const Elt& b) const;
    Elt sub(const Elt& a, const Elt& b) const;
    Elt neg(const Elt& a) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt scale(const Elt& a, const Scalar& s) const;
    Elt pow(const Elt& a, long n, long prec) const;
    // inverse in the fraction field by a linear solve over L
    Elt inverse(const Elt& a) const;

    // valuation in units of v(y) = 1/r, a lower bound when coordinates are zero at precision
    long y_valuation(const Elt& a) const;
    long min_prec(const Elt& a) const;
    bool is_zero(const Elt& a) const;
    // coordinates of y^1..y^{r-1} vanish at their precision
    bool in_base(const Elt& a) const;
    std::string str(const Elt& a) const;

private:
    const LocalField* F_ = nullptr;
    long r_ = 0;
    std::vector<Scalar> m_;
};

}  // namespace ltc
