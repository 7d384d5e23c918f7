#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "series.hpp"

namespace ltc {

enum class ModelKind { Special, Multiplicative, Custom };

const char* model_name(ModelKind k);
ModelKind parse_model(const std::string& s);

// Truncated bivariate series sum c_ij X^i Y^j over i + j < D.
struct Bivariate {
    const LocalField* F = nullptr;
    long D = 0;
    std::vector<Scalar> c;
    Scalar at(long i, long j) const;
    Scalar& ref(long i, long j) { return c[i * D + j]; }
    Series slice_y(long j) const;  // coefficient of Y^j as a series in X
    std::string str() const;
};

class FormalGroup {
public:
    // custom: integral coordinates of the coefficients of [pi](Z), index = exponent
    static std::shared_ptr<const FormalGroup> make(FieldPtr F, ModelKind kind, long N, long M,
                                                   const std::vector<Vec>& custom = {});

    const LocalField* field() const { return F_.get(); }
    const FieldPtr& field_ptr() const { return F_; }
    ModelKind kind() const { return kind_; }
    long N() const { return N_; }
    long M() const { return M_; }
    long work_prec() const { return W_; }
    long frob_degree() const { return static_cast<long>(frob_.size()) - 1; }
    const std::vector<Vec>& frob_coords() const { return frob_; }
    std::string describe() const;

    Scalar pi(long prec) const { return Scalar::uniformizer(F_.get(), prec); }
    Scalar q_over_pi(long prec) const;
    Series frobenius(long prec) const;  // [pi](Z) as an exact polynomial
    // powers [pi]^k for k < N, truncated at Z^N (cached)
    const std::vector<Series>& frobenius_powers() const { return frob_pow_; }

    const Series& g() const { return g_; }
    const Series& log() const { return log_; }
    const Series& exp() const { return exp_; }

    // [a](Z) modulo Z^N. With exact_rep the stored representative of a is taken as exact.
    Series a_mult(const Scalar& a, long N = 0, bool exact_rep = false) const;
    Bivariate group_law(long D) const;
    // F(x, y) for series without constant term
    Series add(const Bivariate& law, const Series& x, const Series& y) const;

private:
    FormalGroup() = default;
    void build();
    std::vector<long> lipschitz_profile(long A, long N) const;

    FieldPtr F_;
    ModelKind kind_ = ModelKind::Special;
    long N_ = 64, M_ = 20, W_ = 40;
    std::vector<Vec> frob_;
    std::vector<Series> frob_pow_;
    Series g_, log_, exp_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<long, long>, std::vector<long>> lip_cache_;
};

using ModelPtr = std::shared_ptr<const FormalGroup>;

}  // namespace ltc
