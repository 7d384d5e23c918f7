#pragma once

#include <string>
#include <vector>

namespace ltc {

// Dense integer matrix; complexes reduce entries modulo p^m.
struct IntMatrix {
    long rows = 0, cols = 0;
    std::vector<long> a;

    IntMatrix() = default;
    IntMatrix(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r * c), 0) {}
    static IntMatrix identity(long n);
    long& at(long i, long j) { return a[static_cast<size_t>(i * cols + j)]; }
    long at(long i, long j) const { return a[static_cast<size_t>(i * cols + j)]; }
};

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y, long mod);
IntMatrix mat_add(const IntMatrix& x, const IntMatrix& y, long mod);
IntMatrix mat_scale(const IntMatrix& x, long s, long mod);
bool mat_is_zero(const IntMatrix& x, long mod);
bool mat_equal(const IntMatrix& x, const IntMatrix& y, long mod);

// Strictly increasing subsets of {1..d} of size q in lexicographic order.
std::vector<std::vector<int>> subsets(int d, int q);
std::vector<int> complement(int d, const std::vector<int>& I);
// sign of the permutation [I, J]
int perm_sign(const std::vector<int>& seq);
int sign_IJ(const std::vector<int>& I, const std::vector<int>& J);

// Free module (Z/p^m)^r with d commuting automorphisms and an optional commuting endomorphism.
struct FiniteActionModule {
    long p = 3, m = 1, rank = 1;
    std::vector<IntMatrix> gammas;
    IntMatrix f;
    bool has_f = false;

    long modulus() const;
    void validate() const;  // NonCommutingAction, ConfigError
};

// Cohomological complex of free Z/p^m modules in degrees lo .. lo + ranks.size() - 1;
// diffs[i] maps degree lo + i to lo + i + 1.
struct ChainComplex {
    long p = 3, m = 1, lo = 0;
    std::vector<long> ranks;
    std::vector<IntMatrix> diffs;

    long modulus() const;
    long hi() const { return lo + static_cast<long>(ranks.size()) - 1; }
    long rank_at(long deg) const;
    IntMatrix diff_at(long deg) const;  // zero matrix outside the stored range
    bool d_squared_zero() const;
};

ChainComplex build_koszul(const FiniteActionModule& M);
// Koszul map on the endomorphism f of M, degreewise f acting on every copy of M
std::vector<IntMatrix> koszul_endomorphism(const FiniteActionModule& M, const IntMatrix& f);

// Fib(f) = cone(f)[-1] for a chain endomorphism f (f[i] acts in degree lo + i); NotChainMap otherwise
ChainComplex mapping_fibre(const ChainComplex& C, const std::vector<IntMatrix>& f);

struct CohomologyGroup {
    long degree = 0;
    std::vector<long> exponents;  // h = sum Z/p^e over the listed e, increasing
    long log_order() const;       // log_p |h|
};

std::vector<CohomologyGroup> cohomology(const ChainComplex& C);
// log_p |ker h^i(g)| for the map induced on cohomology by a chain endomorphism g
long log_order_kernel(const ChainComplex& C, const std::vector<IntMatrix>& g, long degree);
long euler_log(const ChainComplex& C);              // sum (-1)^i m rank_i
long euler_log(const std::vector<CohomologyGroup>& h);  // sum (-1)^i log_p |h^i|

// Self-duality of K_.(Lambda): Lambda entries are linear forms c_0 + sum c_i (gamma_i - 1).
struct DualitySquare {
    int q = 0;
    bool commutes = false;
};

struct DualityReport {
    int d = 0;
    std::vector<std::vector<std::vector<int>>> alpha;  // alpha[q]: rows subsets of size d-q, cols subsets of size q
    std::vector<DualitySquare> squares;
    bool all_commute = true;
};

// with_shift_signs = false drops (-1)^d (-1)^{d-q-1}, for exercising the violation path
DualityReport duality_check(int d, bool with_shift_signs = true);

}  // namespace ltc
