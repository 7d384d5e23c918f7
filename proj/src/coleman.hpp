#pragma once

#include <vector>

#include "mellin.hpp"

namespace ltc {

// g = unit * Z^k * (power series) with k in {0, 1}, together with its norm.
struct ColemanSeries {
    Series g;
    long k = 0;
    Series norm;    // N(g), with N(g) o [pi] = prod over torsion of g(y + .)
    Series defect;  // N(g)/g - 1
    bool coherent = false;
};

ColemanSeries coleman_series(const OperatorContext& C, const Series& g, long N = 0);

struct CoherenceReport {
    bool coherent = false;
    Series defect;
};

CoherenceReport is_norm_coherent(const OperatorContext& C, const Series& g, long N = 0);

struct NormProjection {
    ColemanSeries result;
    std::vector<long> depths;  // pi-adic agreement of iterate i+1 with iterate i; kInf when equal
    long depth = 0;            // last entry of depths
};

// N^k(g0); NoConvergence when the agreement depths fail to increase
NormProjection norm_project(const OperatorContext& C, const Series& g0, long iterations, long N = 0);

// d_inv(g)/g, known modulo Z^N
Series dlog(const OperatorContext& C, const Series& g, long N = 0);
// as dlog, and for a norm-coherent input also checks psi(result) = result
Series dlog_map(const OperatorContext& C, const ColemanSeries& g, long N = 0);

struct RegulatorValue {
    Scalar value;   // via dlog, 1 - (pi/q) phi, multiplication by log and Mellin evaluation
    Scalar closed;  // a r (1 - pi^r/q) (d_inv^r log g)(0)
    Scalar factor;  // 1 - pi^r/q
};

RegulatorValue regulator_value(const OperatorContext& C, const Series& g, long r, const Scalar& a, long N = 0);

// a (1 - pi^{-r}) / (r-1)! * (d_inv^r log g)(0)
Scalar kato_value(const OperatorContext& C, const Series& g, long r, const Scalar& a, long N = 0);

struct InterpolationCheck {
    Scalar lhs;  // (1/r!) (1 - pi^{-r}) / (1 - pi^r/q) * regulator * a
    Scalar rhs;  // kato_value
    bool agree = false;
};

InterpolationCheck cw_interpolation_check(const OperatorContext& C, const Series& g, long r, const Scalar& a, long N = 0);

// ((1+Z)^c - 1)/Z, or (1+Z)^c - 1 when with_zero is set; multiplicative model
Series cyclotomic_coleman(const OperatorContext& C, long c, bool with_zero = false);

}  // namespace ltc
