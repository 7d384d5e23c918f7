#pragma once

#include <string>
#include <vector>

#include "mellin.hpp"

namespace ltc {

// A generator b = 1 + u p^n of U_n (d = 1, multiplicative model over Q_p).
struct BasisTuple {
    Scalar b;
    long n = 1;
    Scalar log_b(long prec) const;  // l(b)
};

inline constexpr long kBaseLevel = 1;  // n_0 for odd p

BasisTuple make_basis(const OperatorContext& C, const Scalar& b, long n);
BasisTuple make_basis(const OperatorContext& C, long b, long n);

// l(b) / ((1+Z)^{l(b)/p^n} - 1), a Laurent series with a simple pole at 0
Series xi_tilde(const OperatorContext& C, const BasisTuple& b, long N, long prec = 0);

struct ThetaMellin {
    Series image;      // Theta_b eta(1), Mellin image of Theta_b
    Series quotient;   // image / eta(1) = phi^n(xi_b)
    Series xi;         // xi_b
    std::vector<Scalar> t_coeffs;  // image / eta(1) as a polynomial in t = log(1+Z)
    long terms = 0;    // number of terms of the operator series in nabla
    long prec = 0;     // guaranteed absolute precision of image and xi
};

// Theta_b = F(l(b) nabla) with F(X) = X/(e^X - 1), applied to eta(1)
ThetaMellin theta_mellin(const OperatorContext& C, const BasisTuple& b, long N, long prec = 0);

// An element lambda of the Robba group ring, stored through D = d_inv(M(lambda)) and,
// when lambda is supported on Gamma_{n_0}, its image h in the log coordinate of level n_0.
struct GroupRobbaElement {
    std::string label;
    Series D;
    Series h;
    bool has_descent = false;
};

GroupRobbaElement dirac(const OperatorContext& C, const Scalar& u, long N);
// Xi^_b delta_u; u = 1 gives Xi^_b
GroupRobbaElement xi_hat(const OperatorContext& C, const BasisTuple& b, long N, const Scalar& u);
GroupRobbaElement xi_hat(const OperatorContext& C, const BasisTuple& b, long N);
GroupRobbaElement combine(const std::vector<Scalar>& coeffs, const std::vector<GroupRobbaElement>& parts,
                          const std::string& label);
GroupRobbaElement zero_element(const OperatorContext& C);
// twist by chi_LT: M(Tw(lambda)) = d_inv M(lambda); the descent is dropped
GroupRobbaElement twist_element(const OperatorContext& C, const GroupRobbaElement& x);

Scalar varsigma(const OperatorContext& C, const GroupRobbaElement& x);
Scalar varrho(const OperatorContext& C, const GroupRobbaElement& x);
// <x, y> on Gamma_{n_0}: q^{-n_0} (q/pi)^{n_0} res(h_x h_y g_LT dZ)
Scalar level_pairing(const OperatorContext& C, const GroupRobbaElement& x, const GroupRobbaElement& y);

struct ResidueIdentityEntry {
    std::string label;
    Scalar varsigma;
    Scalar varrho;
    Scalar rhs;  // q/(q-1) varrho
    bool agree = false;
};

struct ResidueIdentityReport {
    std::vector<ResidueIdentityEntry> entries;
    bool all_agree = true;
};

// varsigma = q/(q-1) varrho on every member; IdentityViolation names the first failure
ResidueIdentityReport residue_identity_check(const OperatorContext& C, const std::vector<GroupRobbaElement>& family);

}  // namespace ltc
