#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "extension.hpp"
#include "operators.hpp"

namespace ltc {

// The pi-torsion of the formal group realized in o_L[y]/(P0), P0 = [pi](y) / (lead y).
// Translates t +_LT Z are solved from [pi](t +_LT Z) = [pi](Z) degree by degree.
class TorsionRingOracle {
public:
    using Elt = ExtensionRing::Elt;
    using ExtSeries = std::vector<Elt>;  // coefficients of Z^0..Z^{N-1}

    // N: number of Z-coefficients of each translate; M: target precision
    static std::shared_ptr<const TorsionRingOracle> make(ContextPtr ctx, long N, long M);

    const ExtensionRing& ring() const { return R_; }
    const std::vector<Elt>& points() const { return points_; }  // nonzero torsion
    const std::vector<ExtSeries>& translates() const { return tau_; }
    long N() const { return N_; }
    long work_prec() const { return Wt_; }

    // [pi](t) evaluated in the extension ring
    Elt frobenius_at(const Elt& t) const;
    // f(Z) + sum over nonzero t of f(t +_LT Z) for a power series f; NotDescended unless the
    // coefficients lie in o_L
    Series direct_trace(const Series& f) const;

    struct ProductUnit {
        Series unit;       // prod_t (t +_LT Z) divided by [pi](Z)/Z
        Scalar constant;   // its value at Z = 0
        bool is_constant;  // higher coefficients vanish at precision
    };
    ProductUnit translate_product_unit() const;

private:
    TorsionRingOracle() = default;
    ExtSeries translate(const Elt& t) const;
    Elt eval_poly(const std::vector<Scalar>& c, const Elt& t) const;
    const std::vector<ExtSeries>& power_table(size_t idx, long upto) const;

    ContextPtr ctx_;
    ExtensionRing R_;
    long N_ = 0, M_ = 0, Wt_ = 0;
    std::vector<Scalar> frob_;  // coefficients of [pi](X), index = degree
    std::vector<Elt> points_;
    std::vector<ExtSeries> tau_;
    mutable std::mutex mu_;
    mutable std::vector<std::vector<ExtSeries>> powers_;  // powers_[t][i] = tau_t^i
};

using OraclePtr = std::shared_ptr<const TorsionRingOracle>;

}  // namespace ltc
