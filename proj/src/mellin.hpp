#pragma once

#include <map>
#include <vector>

#include "operators.hpp"

namespace ltc {

// (1+Z)^a for a in Z_p, multiplicative model only
struct EtaSeries {
    Scalar a;
    Series series;
};

EtaSeries eta(const OperatorContext& C, const Scalar& a, long N);
EtaSeries eta(const OperatorContext& C, long a, long N);

// A series G with psi(G) = 0, read as the Mellin image of a distribution on Gamma.
class MellinElement {
public:
    static MellinElement make(const OperatorContext& C, const Series& G);
    const Series& series() const { return G_; }

private:
    Series G_;
};

MellinElement psi0_project(const OperatorContext& C, const Series& F);

// c_a = (pi/q)^n phi^n psi^n(eta(-a) F) for a = 0..q^n - 1, so that sum_a c_a eta(a) = F
std::vector<Series> decompose(const OperatorContext& C, const Series& F, long n);
Series reassemble(const OperatorContext& C, const std::vector<Series>& parts, long n);

struct MellinValue {
    Scalar value;         // (d_inv^n G)(0)
    long omega_power = 0;  // the true value is Omega^{omega_power} * value
    bool omega_normalized = false;
};

MellinValue mellin_eval(const OperatorContext& C, const MellinElement& G, long n);
// (d_inv^n F)(0) for a power series F
Scalar d_inv_at_zero(const OperatorContext& C, const Series& F, long n);

struct OneMinusPhiCheck {
    Scalar lhs;     // Mellin value of (1 - (pi/q) phi) F at chi^n
    Scalar rhs;     // (1 - pi^{n+1}/q) (d_inv^n F)(0)
    Scalar factor;  // 1 - pi^{n+1}/q
    bool agree = false;
};

OneMinusPhiCheck one_minus_phi_eval(const OperatorContext& C, const Series& F, long n);

MellinElement twist(const OperatorContext& C, const MellinElement& G);

}  // namespace ltc
