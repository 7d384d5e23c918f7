#include "koszul.hpp"

#include <gmpxx.h>

#include <algorithm>

#include "error.hpp"

namespace ltc {

namespace {

long md(long x, long mod) {
    long r = x % mod;
    return r < 0 ? r + mod : r;
}

long ipow(long p, long m) {
    long r = 1;
    for (long i = 0; i < m; ++i) {
        if (r > (1L << 31) / p) throw Error(Err::ConfigError, "p^m must stay below 2^31");
        r *= p;
    }
    return r;
}

using ZMat = std::vector<std::vector<mpz_class>>;

ZMat zmat(long r, long c) { return ZMat(static_cast<size_t>(r), std::vector<mpz_class>(static_cast<size_t>(c), 0)); }

ZMat zid(long n) {
    ZMat I = zmat(n, n);
    for (long i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

ZMat to_z(const IntMatrix& x) {
    ZMat z = zmat(x.rows, x.cols);
    for (long i = 0; i < x.rows; ++i)
        for (long j = 0; j < x.cols; ++j) z[i][j] = x.at(i, j);
    return z;
}

ZMat zmul(const ZMat& x, const ZMat& y, long inner) {
    long r = static_cast<long>(x.size()), c = y.empty() ? 0 : static_cast<long>(y[0].size());
    ZMat z = zmat(r, c);
    for (long i = 0; i < r; ++i)
        for (long k = 0; k < inner; ++k)
            if (x[i][k] != 0)
                for (long j = 0; j < c; ++j) z[i][j] += x[i][k] * y[k][j];
    return z;
}

// S = U A V with U, V unimodular; Uinv and Vinv tracked alongside
struct Smith {
    long r = 0, c = 0;
    std::vector<mpz_class> diag;  // min(r, c) entries, zero past the rank
    ZMat U, Uinv, V, Vinv;
};

Smith smith(const ZMat& A0, long r, long c) {
    Smith s;
    s.r = r;
    s.c = c;
    ZMat A = A0;
    s.U = zid(r);
    s.Uinv = zid(r);
    s.V = zid(c);
    s.Vinv = zid(c);
    auto row_sub = [&](long i, long t, const mpz_class& q) {  // row_i -= q row_t
        for (long j = 0; j < c; ++j) A[i][j] -= q * A[t][j];
        for (long j = 0; j < r; ++j) s.U[i][j] -= q * s.U[t][j];
        for (long j = 0; j < r; ++j) s.Uinv[j][t] += q * s.Uinv[j][i];
    };
    auto row_swap = [&](long i, long t) {
        std::swap(A[i], A[t]);
        std::swap(s.U[i], s.U[t]);
        for (long j = 0; j < r; ++j) std::swap(s.Uinv[j][i], s.Uinv[j][t]);
    };
    auto col_sub = [&](long j, long t, const mpz_class& q) {  // col_j -= q col_t
        for (long i = 0; i < r; ++i) A[i][j] -= q * A[i][t];
        for (long i = 0; i < c; ++i) s.V[i][j] -= q * s.V[i][t];
        for (long i = 0; i < c; ++i) s.Vinv[t][i] += q * s.Vinv[j][i];
    };
    auto col_swap = [&](long j, long t) {
        for (long i = 0; i < r; ++i) std::swap(A[i][j], A[i][t]);
        for (long i = 0; i < c; ++i) std::swap(s.V[i][j], s.V[i][t]);
        std::swap(s.Vinv[j], s.Vinv[t]);
    };
    const long n = std::min(r, c);
    for (long t = 0; t < n; ++t) {
        for (;;) {
            long bi = -1, bj = -1;
            for (long i = t; i < r; ++i)
                for (long j = t; j < c; ++j)
                    if (A[i][j] != 0 && (bi < 0 || abs(A[i][j]) < abs(A[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi < 0) break;
            if (bi != t) row_swap(bi, t);
            if (bj != t) col_swap(bj, t);
            bool clean = true;
            for (long i = t + 1; i < r; ++i)
                if (A[i][t] != 0) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
                    row_sub(i, t, q);
                    if (A[i][t] != 0) clean = false;
                }
            for (long j = t + 1; j < c; ++j)
                if (A[t][j] != 0) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
                    col_sub(j, t, q);
                    if (A[t][j] != 0) clean = false;
                }
            if (!clean) continue;
            long bad = -1;
            for (long i = t + 1; i < r && bad < 0; ++i)
                for (long j = t + 1; j < c; ++j)
                    if (!mpz_divisible_p(A[i][j].get_mpz_t(), A[t][t].get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            row_sub(t, bad, -1);
        }
        if (A[t][t] < 0) {
            for (long j = 0; j < c; ++j) A[t][j] = -A[t][j];
            for (long j = 0; j < r; ++j) s.U[t][j] = -s.U[t][j];
            for (long j = 0; j < r; ++j) s.Uinv[j][t] = -s.Uinv[j][t];
        }
    }
    for (long t = 0; t < n; ++t) s.diag.push_back(A[t][t]);
    return s;
}

long vp(const mpz_class& x, long p) {
    mpz_class y = abs(x);
    long v = 0;
    while (y != 0 && mpz_divisible_ui_p(y.get_mpz_t(), p)) {
        y /= p;
        ++v;
    }
    return v;
}

// {x in Z^n : A x = 0 mod P} = V diag(cdiv) Z^n
struct KernelLattice {
    long n = 0;
    std::vector<mpz_class> cdiv;
    ZMat V, Vinv;

    // coordinates of the columns of G in the lattice basis
    ZMat coords(const ZMat& G, long k) const {
        ZMat y = zmul(Vinv, G, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < k; ++j) {
                if (!mpz_divisible_p(y[i][j].get_mpz_t(), cdiv[i].get_mpz_t()))
                    throw Error(Err::DegenerateSpec, "generator outside the kernel lattice");
                y[i][j] /= cdiv[i];
            }
        return y;
    }
};

KernelLattice kernel_lattice(const ZMat& A, long r, long n, const mpz_class& P) {
    KernelLattice K;
    K.n = n;
    K.cdiv.assign(static_cast<size_t>(n), 1);
    if (r == 0) {
        K.V = zid(n);
        K.Vinv = zid(n);
        return K;
    }
    Smith s = smith(A, r, n);
    for (long j = 0; j < static_cast<long>(s.diag.size()); ++j) {
        if (s.diag[j] == 0) continue;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), s.diag[j].get_mpz_t(), P.get_mpz_t());
        K.cdiv[j] = P / g;
    }
    K.V = s.V;
    K.Vinv = s.Vinv;
    return K;
}

// generators of im(d^{i-1}) + P Z^n as columns
ZMat image_generators(const ChainComplex& C, long deg, long& k) {
    long n = C.rank_at(deg);
    IntMatrix Dp = C.diff_at(deg - 1);
    k = Dp.cols + n;
    ZMat G = zmat(n, k);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < Dp.cols; ++j) G[i][j] = Dp.at(i, j);
        G[i][Dp.cols + i] = C.modulus();
    }
    return G;
}

std::vector<long> quotient_exponents(const ZMat& coords, long n, long k, long p) {
    Smith s = smith(coords, n, k);
    std::vector<long> e;
    for (const auto& x : s.diag) {
        if (x == 0) throw Error(Err::DegenerateSpec, "quotient is not finite");
        long v = vp(x, p);
        if (v > 0) e.push_back(v);
    }
    std::sort(e.begin(), e.end());
    return e;
}

}  // namespace

// ---------------------------------------------------------------- matrices

IntMatrix IntMatrix::identity(long n) {
    IntMatrix I(n, n);
    for (long i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y, long mod) {
    if (x.cols != y.rows) throw Error(Err::ConfigError, "matrix shapes do not match");
    IntMatrix z(x.rows, y.cols);
    for (long i = 0; i < x.rows; ++i)
        for (long k = 0; k < x.cols; ++k) {
            long a = x.at(i, k);
            if (a == 0) continue;
            for (long j = 0; j < y.cols; ++j)
                z.at(i, j) = md(static_cast<long>((static_cast<__int128>(a) * y.at(k, j) + z.at(i, j)) % mod), mod);
        }
    return z;
}

IntMatrix mat_add(const IntMatrix& x, const IntMatrix& y, long mod) {
    if (x.rows != y.rows || x.cols != y.cols) throw Error(Err::ConfigError, "matrix shapes do not match");
    IntMatrix z(x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) z.a[i] = md(x.a[i] + y.a[i], mod);
    return z;
}

IntMatrix mat_scale(const IntMatrix& x, long s, long mod) {
    IntMatrix z = x;
    for (auto& v : z.a) v = md(static_cast<long>((static_cast<__int128>(v) * s) % mod), mod);
    return z;
}

bool mat_is_zero(const IntMatrix& x, long mod) {
    for (long v : x.a)
        if (md(v, mod) != 0) return false;
    return true;
}

bool mat_equal(const IntMatrix& x, const IntMatrix& y, long mod) {
    if (x.rows != y.rows || x.cols != y.cols) return false;
    for (size_t i = 0; i < x.a.size(); ++i)
        if (md(x.a[i] - y.a[i], mod) != 0) return false;
    return true;
}

// ---------------------------------------------------------------- exterior indices

std::vector<std::vector<int>> subsets(int d, int q) {
    std::vector<std::vector<int>> out;
    if (q < 0 || q > d) return out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == q) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= d; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

std::vector<int> complement(int d, const std::vector<int>& I) {
    std::vector<int> J;
    for (int i = 1; i <= d; ++i)
        if (std::find(I.begin(), I.end(), i) == I.end()) J.push_back(i);
    return J;
}

int perm_sign(const std::vector<int>& seq) {
    int inv = 0;
    for (size_t i = 0; i < seq.size(); ++i)
        for (size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

int sign_IJ(const std::vector<int>& I, const std::vector<int>& J) {
    std::vector<int> s = I;
    s.insert(s.end(), J.begin(), J.end());
    return perm_sign(s);
}

namespace {

long subset_index(const std::vector<std::vector<int>>& list, const std::vector<int>& I) {
    auto it = std::find(list.begin(), list.end(), I);
    return it == list.end() ? -1 : static_cast<long>(it - list.begin());
}

std::vector<int> drop(const std::vector<int>& I, size_t k) {
    std::vector<int> r = I;
    r.erase(r.begin() + static_cast<long>(k));
    return r;
}

}  // namespace

// ---------------------------------------------------------------- modules and complexes

long FiniteActionModule::modulus() const { return ipow(p, m); }

void FiniteActionModule::validate() const {
    const long mod = modulus();
    auto check_shape = [&](const IntMatrix& x, const char* what) {
        if (x.rows != rank || x.cols != rank) throw Error(Err::ConfigError, std::string(what) + " has the wrong shape");
    };
    for (const auto& g : gammas) {
        check_shape(g, "gamma");
        // an automorphism of (Z/p^m)^r is invertible modulo p
        ZMat z = to_z(g);
        for (auto& row : z)
            for (auto& v : row) v = v % p;
        Smith s = smith(z, rank, rank);
        for (const auto& x : s.diag)
            if (x == 0 || mpz_divisible_ui_p(x.get_mpz_t(), p)) throw Error(Err::ConfigError, "gamma is not an automorphism");
    }
    if (has_f) check_shape(f, "f");
    for (size_t i = 0; i < gammas.size(); ++i) {
        for (size_t j = i + 1; j < gammas.size(); ++j)
            if (!mat_equal(mat_mul(gammas[i], gammas[j], mod), mat_mul(gammas[j], gammas[i], mod), mod))
                throw Error(Err::NonCommutingAction, "gamma_" + std::to_string(i + 1) + " and gamma_" + std::to_string(j + 1) + " do not commute");
        if (has_f && !mat_equal(mat_mul(gammas[i], f, mod), mat_mul(f, gammas[i], mod), mod))
            throw Error(Err::NonCommutingAction, "f does not commute with gamma_" + std::to_string(i + 1));
    }
}

long ChainComplex::modulus() const { return ipow(p, m); }

long ChainComplex::rank_at(long deg) const {
    if (deg < lo || deg > hi()) return 0;
    return ranks[static_cast<size_t>(deg - lo)];
}

IntMatrix ChainComplex::diff_at(long deg) const {
    if (deg >= lo && deg < hi()) return diffs[static_cast<size_t>(deg - lo)];
    return IntMatrix(rank_at(deg + 1), rank_at(deg));
}

bool ChainComplex::d_squared_zero() const {
    for (long deg = lo; deg + 1 < hi(); ++deg)
        if (!mat_is_zero(mat_mul(diff_at(deg + 1), diff_at(deg), modulus()), modulus())) return false;
    return true;
}

ChainComplex build_koszul(const FiniteActionModule& M) {
    M.validate();
    const int d = static_cast<int>(M.gammas.size());
    const long r = M.rank, mod = M.modulus();
    ChainComplex C;
    C.p = M.p;
    C.m = M.m;
    C.lo = 0;
    std::vector<std::vector<std::vector<int>>> S;
    for (int q = 0; q <= d; ++q) {
        S.push_back(subsets(d, q));
        C.ranks.push_back(static_cast<long>(S.back().size()) * r);
    }
    for (int q = 0; q < d; ++q) {
        // (d^q f)(e_I') = (-1)^{q-1} sum_k (-1)^{k+1} (gamma_{i_k} - 1) f(e_{I' minus i_k})
        IntMatrix D(C.ranks[q + 1], C.ranks[q]);
        for (size_t row = 0; row < S[q + 1].size(); ++row) {
            const auto& Ip = S[q + 1][row];
            for (size_t k = 0; k < Ip.size(); ++k) {
                long col = subset_index(S[q], drop(Ip, k));
                long sg = ((q - 1) + static_cast<long>(k)) % 2 ? -1 : 1;  // (-1)^{q-1} (-1)^{k+1} with k 0-based
                const IntMatrix& g = M.gammas[static_cast<size_t>(Ip[k] - 1)];
                for (long a = 0; a < r; ++a)
                    for (long b = 0; b < r; ++b) {
                        long v = g.at(a, b) - (a == b ? 1 : 0);
                        D.at(static_cast<long>(row) * r + a, col * r + b) = md(sg * v, mod);
                    }
            }
        }
        C.diffs.push_back(D);
    }
    if (!C.d_squared_zero()) throw Error(Err::NonCommutingAction, "d o d != 0");
    return C;
}

std::vector<IntMatrix> koszul_endomorphism(const FiniteActionModule& M, const IntMatrix& f) {
    const int d = static_cast<int>(M.gammas.size());
    const long r = M.rank;
    std::vector<IntMatrix> out;
    for (int q = 0; q <= d; ++q) {
        long copies = static_cast<long>(subsets(d, q).size());
        IntMatrix F(copies * r, copies * r);
        for (long c = 0; c < copies; ++c)
            for (long a = 0; a < r; ++a)
                for (long b = 0; b < r; ++b) F.at(c * r + a, c * r + b) = md(f.at(a, b), M.modulus());
        out.push_back(F);
    }
    return out;
}

ChainComplex mapping_fibre(const ChainComplex& C, const std::vector<IntMatrix>& f) {
    const long mod = C.modulus();
    if (f.size() != C.ranks.size()) throw Error(Err::NotChainMap, "one matrix per degree is required");
    auto fat = [&](long deg) {
        if (deg < C.lo || deg > C.hi()) return IntMatrix(C.rank_at(deg), C.rank_at(deg));
        return f[static_cast<size_t>(deg - C.lo)];
    };
    for (long deg = C.lo; deg <= C.hi(); ++deg) {
        const IntMatrix& F = fat(deg);
        if (F.rows != C.rank_at(deg) || F.cols != C.rank_at(deg)) throw Error(Err::NotChainMap, "shape mismatch in degree " + std::to_string(deg));
        if (!mat_equal(mat_mul(fat(deg + 1), C.diff_at(deg), mod), mat_mul(C.diff_at(deg), F, mod), mod))
            throw Error(Err::NotChainMap, "f d != d f in degree " + std::to_string(deg));
    }
    // Fib^i = C^i + C^{i-1}, d = [[d^i, 0], [-f^i, -d^{i-1}]]
    ChainComplex Fb;
    Fb.p = C.p;
    Fb.m = C.m;
    Fb.lo = C.lo;
    for (long deg = C.lo; deg <= C.hi() + 1; ++deg) Fb.ranks.push_back(C.rank_at(deg) + C.rank_at(deg - 1));
    for (long deg = C.lo; deg <= C.hi(); ++deg) {
        long a = C.rank_at(deg), b = C.rank_at(deg - 1), a1 = C.rank_at(deg + 1);
        IntMatrix D(a1 + a, a + b);
        IntMatrix d0 = C.diff_at(deg), d1 = C.diff_at(deg - 1), F = fat(deg);
        for (long i = 0; i < a1; ++i)
            for (long j = 0; j < a; ++j) D.at(i, j) = d0.at(i, j);
        for (long i = 0; i < a; ++i) {
            for (long j = 0; j < a; ++j) D.at(a1 + i, j) = md(-F.at(i, j), mod);
            for (long j = 0; j < b; ++j) D.at(a1 + i, a + j) = md(-d1.at(i, j), mod);
        }
        Fb.diffs.push_back(D);
    }
    if (!Fb.d_squared_zero()) throw Error(Err::NotChainMap, "fibre differential does not square to zero");
    return Fb;
}

long CohomologyGroup::log_order() const {
    long s = 0;
    for (long e : exponents) s += e;
    return s;
}

std::vector<CohomologyGroup> cohomology(const ChainComplex& C) {
    std::vector<CohomologyGroup> out;
    const mpz_class P = C.modulus();
    for (long deg = C.lo; deg <= C.hi(); ++deg) {
        CohomologyGroup h;
        h.degree = deg;
        long n = C.rank_at(deg);
        if (n > 0) {
            IntMatrix D = C.diff_at(deg);
            KernelLattice K = kernel_lattice(to_z(D), D.rows, n, P);
            long k = 0;
            ZMat G = image_generators(C, deg, k);
            h.exponents = quotient_exponents(K.coords(G, k), n, k, C.p);
        }
        out.push_back(h);
    }
    return out;
}

long log_order_kernel(const ChainComplex& C, const std::vector<IntMatrix>& g, long deg) {
    long n = C.rank_at(deg);
    if (n == 0) return 0;
    if (g.size() != C.ranks.size()) throw Error(Err::NotChainMap, "one matrix per degree is required");
    const mpz_class P = C.modulus();
    long k = 0;
    ZMat G = image_generators(C, deg, k);
    // I = Uinv diag(s) Z^n, so x in I iff (U x)_j = 0 mod s_j
    Smith s = smith(G, n, k);
    ZMat Ug = zmul(s.U, to_z(g[static_cast<size_t>(deg - C.lo)]), n);
    IntMatrix D = C.diff_at(deg);
    long rows = D.rows + n;
    ZMat A = zmat(rows, n);
    for (long i = 0; i < D.rows; ++i)
        for (long j = 0; j < n; ++j) A[i][j] = D.at(i, j);
    for (long i = 0; i < n; ++i) {
        mpz_class scale = P / s.diag[i];
        for (long j = 0; j < n; ++j) A[D.rows + i][j] = Ug[i][j] * scale;
    }
    KernelLattice K = kernel_lattice(A, rows, n, P);
    long total = 0;
    for (long e : quotient_exponents(K.coords(G, k), n, k, C.p)) total += e;
    return total;
}

long euler_log(const ChainComplex& C) {
    long s = 0;
    for (long deg = C.lo; deg <= C.hi(); ++deg) s += ((deg % 2) ? -1 : 1) * C.m * C.rank_at(deg);
    return s;
}

long euler_log(const std::vector<CohomologyGroup>& h) {
    long s = 0;
    for (const auto& g : h) s += ((g.degree % 2) ? -1 : 1) * g.log_order();
    return s;
}

// ---------------------------------------------------------------- self-duality

namespace {

using Form = std::vector<long>;  // c_0 + sum_i c_i x_i with x_i = gamma_i - 1
using FormMatrix = std::vector<std::vector<Form>>;

// homological d_q on wedge^q, columns indexed by subsets of size q, rows by size q-1
FormMatrix koszul_hom(int d, int q) {
    auto rows = subsets(d, q - 1), cols = subsets(d, q);
    FormMatrix D(rows.size(), std::vector<Form>(cols.size(), Form(static_cast<size_t>(d + 1), 0)));
    for (size_t c = 0; c < cols.size(); ++c)
        for (size_t k = 0; k < cols[c].size(); ++k) {
            long r = subset_index(rows, drop(cols[c], k));
            D[static_cast<size_t>(r)][c][static_cast<size_t>(cols[c][k])] += (k % 2) ? -1 : 1;
        }
    return D;
}

FormMatrix form_mul_sign(const std::vector<std::vector<int>>& S, const FormMatrix& X, int d) {
    size_t r = S.size(), inner = X.size(), c = inner ? X[0].size() : 0;
    FormMatrix Z(r, std::vector<Form>(c, Form(static_cast<size_t>(d + 1), 0)));
    for (size_t i = 0; i < r; ++i)
        for (size_t k = 0; k < inner; ++k)
            if (S[i][k])
                for (size_t j = 0; j < c; ++j)
                    for (int t = 0; t <= d; ++t) Z[i][j][static_cast<size_t>(t)] += S[i][k] * X[k][j][static_cast<size_t>(t)];
    return Z;
}

FormMatrix form_mul_by_sign(const FormMatrix& X, const std::vector<std::vector<int>>& S, int d) {
    size_t r = X.size(), inner = S.size(), c = inner ? S[0].size() : 0;
    FormMatrix Z(r, std::vector<Form>(c, Form(static_cast<size_t>(d + 1), 0)));
    for (size_t i = 0; i < r; ++i)
        for (size_t k = 0; k < inner; ++k)
            for (size_t j = 0; j < c; ++j)
                if (S[k][j])
                    for (int t = 0; t <= d; ++t) Z[i][j][static_cast<size_t>(t)] += X[i][k][static_cast<size_t>(t)] * S[k][j];
    return Z;
}

}  // namespace

DualityReport duality_check(int d, bool with_shift_signs) {
    if (d < 1 || d > 8) throw Error(Err::ConfigError, "duality check supports 1 <= d <= 8");
    DualityReport rep;
    rep.d = d;
    // alpha_{-q}: e_I -> sign(I, J) e*_J, rows subsets J of size d-q, columns subsets I of size q
    for (int q = 0; q <= d; ++q) {
        auto rows = subsets(d, d - q), cols = subsets(d, q);
        std::vector<std::vector<int>> A(rows.size(), std::vector<int>(cols.size(), 0));
        for (size_t c = 0; c < cols.size(); ++c) {
            auto J = complement(d, cols[c]);
            A[static_cast<size_t>(subset_index(rows, J))][c] = sign_IJ(cols[c], J);
        }
        rep.alpha.push_back(A);
    }
    for (int q = 1; q <= d; ++q) {
        // alpha_{-q+1} d_q against eps (d_{d-q+1})^T alpha_{-q}
        FormMatrix lhs = form_mul_sign(rep.alpha[static_cast<size_t>(q - 1)], koszul_hom(d, q), d);
        FormMatrix dt = koszul_hom(d, d - q + 1);
        FormMatrix dT(dt.empty() ? 0 : dt[0].size(), std::vector<Form>(dt.size()));
        for (size_t i = 0; i < dt.size(); ++i)
            for (size_t j = 0; j < dt[i].size(); ++j) dT[j][i] = dt[i][j];
        long eps = with_shift_signs ? (((d + (d - q - 1)) % 2 + 2) % 2 ? -1 : 1) : 1;
        FormMatrix rhs = form_mul_by_sign(dT, rep.alpha[static_cast<size_t>(q)], d);
        auto rows = subsets(d, d - q + 1), cols = subsets(d, q);
        for (size_t i = 0; i < rhs.size(); ++i)
            for (size_t j = 0; j < rhs[i].size(); ++j)
                for (int t = 0; t <= d; ++t)
                    if (lhs[i][j][static_cast<size_t>(t)] != eps * rhs[i][j][static_cast<size_t>(t)]) {
                        const auto& I = cols[j];
                        const auto& Jk = rows[i];
                        long k = 0, l = 0;
                        for (size_t a = 0; a < I.size(); ++a)
                            if (std::find(Jk.begin(), Jk.end(), I[a]) != Jk.end()) {
                                k = static_cast<long>(a) + 1;
                                l = std::find(Jk.begin(), Jk.end(), I[a]) - Jk.begin() + 1;
                            }
                        std::string Is;
                        for (int v : I) Is += std::to_string(v);
                        throw Error(Err::SignViolation, "duality square fails at d = " + std::to_string(d) + ", I = {" + Is +
                                                            "}, k = " + std::to_string(k) + ", l = " + std::to_string(l));
                    }
        rep.squares.push_back({q, true});
    }
    return rep;
}

}  // namespace ltc
