#pragma once

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "formal_group.hpp"

namespace ltc {

// Precision used for integer constants that enter products as exact factors.
inline constexpr long kHighPrec = 2000;

Scalar exact_int(const LocalField* F, long n);
Scalar exact_rational(const LocalField* F, long num, long den);

// Operator calculus for one formal group. The distinguished polynomial is
// P(X;W) = ([pi](X) - W) / lead, monic of degree q; power sums of its roots
// s_k(W) = tr(C_P^k) drive the trace, psi and the norm.
class OperatorContext {
public:
    static std::shared_ptr<const OperatorContext> make(ModelPtr G);

    const FormalGroup& model() const { return *G_; }
    const ModelPtr& model_ptr() const { return G_; }
    const LocalField* field() const { return G_->field(); }
    long q() const { return q_; }
    long work_prec() const { return W_; }

    // coefficients a_0..a_q of P as Laurent polynomials in W (a_0 = -W/lead)
    std::vector<Series> distinguished() const;
    // q x q companion matrix, row-major, entries Laurent polynomials in W
    std::vector<Series> companion() const;
    // s_k(W) = sum of z^k over the roots of P(X;W); coefficients below the stored
    // window have valuation >= work_prec
    Series power_sum(long k) const;

    Series phi(const Series& f) const;
    Series trace_T(const Series& f) const;  // a series in W, returned in the variable Z
    Series psi(const Series& f) const;       // psi o phi = (q/pi) id
    Series psi_normalized(const Series& f) const;  // (pi/q) psi, left inverse of phi
    Series phi_inverse(const Series& H) const;     // NotInPhiImage unless H = phi(h)
    Series norm(const Series& g) const;
    Series gamma(const Scalar& a, const Series& f) const;
    // action on the dual side Hom(R, Omega^1) = R(chi_LT): f -> a (f o [a])
    Series gamma_dual(const Scalar& a, const Series& f) const;
    Series d_inv(const Series& f) const;
    Series nabla(const Series& f) const;
    Scalar residue(const Series& f) const;
    Scalar pairing(const Series& f, const Series& g) const;
    const Series& g_inverse() const { return ginv_; }
    // phi(Z^{-m}) = [pi]^{-m} expanded at the boundary
    Series boundary_power(long m) const;
    Series a_mult(const Scalar& a) const;

private:
    OperatorContext() = default;
    void extend_pos(long k) const;
    void extend_neg(long k) const;
    Series trim(const Series& s, long k) const;

    ModelPtr G_;
    long q_ = 0, W_ = 0;
    std::vector<Scalar> a_;  // a_1..a_q at index 1..q, a_[0] = 1/lead
    Scalar lead_;
    Series frob_, ginv_;
    mutable std::mutex mu_;
    mutable std::deque<Series> pos_;  // s_0, s_1, ...
    mutable std::deque<Series> neg_;  // s_{-1}, s_{-2}, ...
    mutable std::map<long, Series> boundary_;
    mutable std::map<std::string, Series> amult_;
};

using ContextPtr = std::shared_ptr<const OperatorContext>;

}  // namespace ltc
