#pragma once

#include <random>

#include "padic.hpp"
#include "series.hpp"

namespace ltc::testing {

inline FieldPtr qp(long p) { return LocalField::make({p, FieldKind::Qp, 1, {}}); }
inline FieldPtr unram(long p, long f) { return LocalField::make({p, FieldKind::Unramified, f, {}}); }
inline FieldPtr eis(long p, std::vector<long> a) { return LocalField::make({p, FieldKind::Eisenstein, 0, std::move(a)}); }

inline Scalar rand_int_scalar(const LocalField* F, std::mt19937_64& rng, long prec) {
    Vec x = F->zero_vec();
    std::uniform_int_distribution<long> d(-1000000, 1000000);
    for (auto& c : x) c = d(rng);
    return Scalar::from_vec(F, x, 0, prec);
}

inline Scalar rand_unit(const LocalField* F, std::mt19937_64& rng, long prec) {
    for (;;) {
        Scalar s = rand_int_scalar(F, rng, prec);
        if (s.is_unit()) return s;
    }
}

// exact Laurent polynomial with exponents in [lo, hi]
inline Series rand_laurent(const LocalField* F, std::mt19937_64& rng, long lo, long hi, long prec) {
    std::vector<Scalar> c;
    for (long k = lo; k <= hi; ++k) c.push_back(rand_int_scalar(F, rng, prec));
    return Series(F, lo, std::move(c));
}

// integral power series known modulo Z^N
inline Series rand_power_series(const LocalField* F, std::mt19937_64& rng, long N, long prec) {
    std::vector<Scalar> c;
    for (long k = 0; k < N; ++k) c.push_back(rand_int_scalar(F, rng, prec));
    return Series(F, 0, std::move(c), Tail{0, 0});
}

inline bool series_eq(const Series& a, const Series& b, long upto = kInf) { return compare(a, b, upto).equal; }

}  // namespace ltc::testing
