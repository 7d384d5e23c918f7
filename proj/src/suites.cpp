#include "suites.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <future>
#include <random>
#include <thread>

#include "coleman.hpp"
#include "explicit.hpp"
#include "koszul.hpp"
#include "torsion.hpp"

namespace ltc {

namespace {

Scalar I(const LocalField* F, long n) { return exact_int(F, n); }

Scalar Q(const LocalField* F, const mpq_class& x) {
    if (x == 0) return Scalar::zero(F, kInf);
    return Scalar::from_int(F, x.get_num(), kHighPrec) * Scalar::from_int(F, x.get_den(), kHighPrec).inverse();
}

std::string pad(long i) {
    std::string s = std::to_string(i);
    return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

std::uint64_t suite_seed(const RunConfig& cfg, const std::string& suite) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : suite) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
    return cfg.seed * 0x9E3779B97F4A7C15ULL ^ h;
}

Scalar rand_int(const LocalField* F, std::mt19937_64& rng, long prec) {
    Vec x = F->zero_vec();
    for (auto& c : x) c = static_cast<long>(rng() % 2000001) - 1000000;
    return Scalar::from_vec(F, x, 0, prec);
}

Scalar rand_unit(const LocalField* F, std::mt19937_64& rng, long prec) {
    for (;;) {
        Scalar s = rand_int(F, rng, prec);
        if (s.is_unit()) return s;
    }
}

Series rand_laurent(const LocalField* F, std::mt19937_64& rng, long lo, long hi, long prec) {
    std::vector<Scalar> c;
    for (long k = lo; k <= hi; ++k) c.push_back(rand_int(F, rng, prec));
    return Series(F, lo, std::move(c));
}

Series rand_power_series(const LocalField* F, std::mt19937_64& rng, long N, long prec) {
    std::vector<Scalar> c;
    for (long k = 0; k < N; ++k) c.push_back(rand_int(F, rng, prec));
    return Series(F, 0, std::move(c), Tail{0, 0});
}

bool all_zero(const Series& s) {
    for (const auto& c : s.coeffs())
        if (!c.is_zero()) return false;
    return true;
}

// runs fn(i, recorder) for i < n on a few threads; inputs must be drawn before the call
void parallel_cases(Recorder& out, const std::string& suite, bool timing, long n,
                    const std::function<void(long, Recorder&)>& fn) {
    long workers = std::max(1L, std::min<long>(n, std::max(1u, std::thread::hardware_concurrency())));
    std::vector<std::future<std::vector<CheckRecord>>> jobs;
    for (long w = 0; w < workers; ++w)
        jobs.push_back(std::async(std::launch::async, [&, w] {
            Recorder r(suite, timing);
            for (long i = w; i < n; i += workers) fn(i, r);
            return r.records();
        }));
    for (auto& j : jobs)
        for (auto& rec : j.get()) out.records().push_back(std::move(rec));
}

struct Env {
    FieldPtr F;
    ContextPtr C;
    const LocalField* K() const { return F.get(); }
};

Env make_env(const RunConfig& cfg, long N) {
    FieldPtr F = LocalField::make(cfg.field);
    return {F, OperatorContext::make(FormalGroup::make(F, cfg.model, N, cfg.M))};
}

// ---------------------------------------------------------------- core-ops

void suite_core_ops(const RunConfig& cfg, Recorder& rec) {
    Env e = make_env(cfg, cfg.N);
    const OperatorContext& C = *e.C;
    const LocalField* K = e.K();
    const long M = cfg.M, N = cfg.N, q = C.q();
    const Scalar qpi = I(K, q).mul_pi_pow(-1);
    std::mt19937_64 rng(suite_seed(cfg, "core-ops"));

    struct Pair {
        Series f, g;
        bool exact;
    };
    std::vector<Pair> pairs;
    for (long i = 0; i < cfg.count; ++i) {
        bool exact = i % 2 == 0;
        auto regular = [&] { return exact ? rand_laurent(K, rng, 0, 12, kHighPrec) : rand_power_series(K, rng, N, M + 20); };
        Series f = regular() + rand_laurent(K, rng, -3, -1, kHighPrec);
        Series g = regular() + rand_laurent(K, rng, -2, -1, kHighPrec);
        pairs.push_back({f, g, exact});
    }
    parallel_cases(rec, "core-ops", cfg.timing, cfg.count, [&](long i, Recorder& r) {
        const Pair& P = pairs[static_cast<size_t>(i)];
        std::string par = "case=" + pad(i) + (P.exact ? " exact" : " truncated");
        r.check("psi-phi", "psi-phi-normalization", par, [&] {
            return outcome_series(C.psi(C.phi(P.f)), P.f.scale(qpi), kInf, P.exact ? 16 : N / q);
        });
        r.check("projection-formula", "psi-projection-formula", par, [&] {
            return outcome_series(C.psi(C.phi(P.g) * P.f), P.g * C.psi(P.f), kInf, 1);
        });
        r.check("psi-normalized-left-inverse", "normalized-psi", par,
                [&] { return outcome_series(C.psi_normalized(C.phi(P.f)), P.f, kInf, 1); });
    });

    // companion-matrix trace against the sum over torsion translates; the torsion ring has
    // degree q - 1 over L, so large q runs a reduced number of cases
    const long ntrace = q >= 25 ? std::min(cfg.count, 10L) : cfg.count;
    std::vector<Series> tr;
    for (long i = 0; i < ntrace; ++i)
        tr.push_back(i % 2 ? rand_laurent(K, rng, 0, N - 1, M + 20) : rand_power_series(K, rng, N, M + 20));
    OraclePtr O;
    rec.check("trace-oracle-build", "torsion-trace-oracle", "", [&] {
        O = TorsionRingOracle::make(e.C, N, M);
        return outcome_bool(true, "torsion points=" + std::to_string(O->points().size()));
    });
    if (O)
        parallel_cases(rec, "core-ops", cfg.timing, ntrace, [&](long i, Recorder& r) {
            const Series& f = tr[static_cast<size_t>(i)];
            bool exact = i % 2;
            r.check("trace-oracle", "torsion-trace-oracle", "case=" + pad(i) + (exact ? " exact" : " truncated"), [&] {
                return outcome_series(O->direct_trace(f), C.phi(C.psi(f).mul_pi_pow(1)), N, exact ? N : 1, exact ? M : 0);
            });
        });

    // pairing adjunctions on exact Laurent polynomials
    const long npair = std::max(10L, cfg.count / 5);
    struct PairingCase {
        Series f, g;
        Scalar a;
    };
    std::vector<PairingCase> pc;
    // phi(Z^-k) expands to Z^{-qk}(...), which must stay inside the stored window of g_LT
    const long fpole = q <= 5 ? 3 : 0;
    for (long i = 0; i < npair; ++i) {
        Series f = rand_laurent(K, rng, -fpole, 8, kHighPrec);
        Series g = rand_laurent(K, rng, -3, 8, kHighPrec);
        pc.push_back({f, g, rand_unit(K, rng, M)});
    }
    // for q = 5 the boundary expansion is cut by the window, so only agreement at the
    // joint precision is asserted there
    const long pmin = q == 5 ? 1 : M - 2;
    parallel_cases(rec, "core-ops", cfg.timing, npair, [&](long i, Recorder& r) {
        const PairingCase& P = pc[static_cast<size_t>(i)];
        std::string par = "case=" + pad(i);
        r.check("pairing-phi-psi", "pairing-adjunction-phi-psi", par,
                [&] { return outcome_equal(C.pairing(C.phi(P.f), P.g), C.pairing(P.f, C.psi(P.g)), pmin); });
        r.check("pairing-phi-phi", "pairing-phi-phi", par,
                [&] { return outcome_equal(C.pairing(C.phi(P.f), C.phi(P.g)), C.pairing(P.f, P.g) * qpi); });
        r.check("pairing-gamma", "pairing-gamma-invariance", par, [&] {
            return outcome_equal(C.pairing(C.gamma_dual(P.a, P.f), C.gamma(P.a, P.g)), C.pairing(P.f, P.g), M - 2);
        });
        r.check("pairing-gamma-twist", "pairing-gamma-twist", par, [&] {
            return outcome_equal(C.pairing(C.gamma(P.a, P.f), C.gamma(P.a, P.g)), C.pairing(P.f, P.g) * P.a.inverse());
        });
        r.check("pairing-symmetric", "pairing-symmetry", par,
                [&] { return outcome_equal(C.pairing(P.f, P.g), C.pairing(P.g, P.f)); });
        r.check("residue-exact-derivative", "residue-of-derivative", par,
                [&] { return outcome_bool(C.residue(P.f.derivative()).is_zero()); });
    });

    // Gamma action and differential operators
    for (long i = 0; i < 5; ++i) {
        Series f = rand_laurent(K, rng, -2, 10, kHighPrec);
        Series g = rand_laurent(K, rng, 0, 40, kHighPrec);
        Scalar a = rand_unit(K, rng, M), b = rand_unit(K, rng, M);
        std::string par = "case=" + pad(i);
        rec.check("gamma-action", "gamma-group-action", par,
                  [&] { return outcome_series(C.gamma(a, C.gamma(b, f)), C.gamma(a * b, f), kInf, 40); });
        rec.check("gamma-phi", "gamma-commutes-phi", par,
                  [&] { return outcome_series(C.gamma(a, C.phi(g)), C.phi(C.gamma(a, g)), kInf, 1); });
        rec.check("gamma-psi", "gamma-commutes-psi", par,
                  [&] { return outcome_series(C.psi(C.gamma(a, g)), C.gamma(a, C.psi(g)), kInf, 40 / q); });
        rec.check("d_inv-gamma", "d_inv-gamma", par,
                  [&] { return outcome_series(C.d_inv(C.gamma(a, f)), C.gamma(a, C.d_inv(f)).scale(a), kInf, 1); });
        rec.check("d_inv-phi", "d_inv-phi", par,
                  [&] { return outcome_series(C.d_inv(C.phi(f)), C.phi(C.d_inv(f)).mul_pi_pow(1), kInf, 1); });
        rec.check("nabla", "nabla-log-d_inv", par,
                  [&] { return outcome_series(C.nabla(f), C.model().log() * C.d_inv(f), kInf, 1); });
    }
    rec.check("d_inv-log", "d_inv-log", "", [&] {
        return outcome_series(C.d_inv(C.model().log()), Series::constant(I(K, 1)), kInf, N - 4);
    });
    rec.check("phi-log", "phi-log", "", [&] {
        return outcome_series(C.phi(C.model().log()), C.model().log().mul_pi_pow(1), kInf, N - 4);
    });
}

// ---------------------------------------------------------------- psi-omega

void suite_psi_omega(const RunConfig& cfg, Recorder& rec) {
    Env e = make_env(cfg, cfg.N);
    const OperatorContext& C = *e.C;
    const LocalField* K = e.K();
    for (long m = 1; m <= 4; ++m) {
        std::string par = "m=" + std::to_string(m);
        rec.check("psi-omega", "psi-of-negative-powers", par, [&] {
            Series r = C.psi(Series::monomial(I(K, 1), -m)).shift(m);
            bool principal = r.negA() >= cfg.M;
            for (long k = r.lo(); k < 0; ++k) principal = principal && r.coeff(k).is_zero();
            Outcome o = outcome_equal(r.coeff(0), I(K, 1).mul_pi_pow(m - 1), cfg.M);
            if (!principal) {
                o.pass = false;
                o.lhs = "principal part of Z^m psi(Z^-m) is nonzero";
                o.rhs = "0";
            }
            return o;
        });
    }
    rec.check("psi-constant", "psi-phi-normalization", "f=1", [&] {
        return outcome_series(C.psi(Series::constant(I(K, 1))), Series::constant(I(K, C.q()).mul_pi_pow(-1)), kInf, 1);
    });
}

// ---------------------------------------------------------------- formal-group

void suite_formal_group(const RunConfig& cfg, Recorder& rec) {
    Env e = make_env(cfg, cfg.N);
    const FormalGroup& G = e.C->model();
    const LocalField* K = e.K();
    const long M = cfg.M, D = 8;
    std::mt19937_64 rng(suite_seed(cfg, "formal-group"));
    Bivariate law;
    rec.check("group-law-unit", "group-law", "D=8", [&] {
        law = G.group_law(D);
        bool ok = true;
        for (long i = 0; i < D; ++i) ok = ok && (law.at(i, 0) - Scalar::from_int(K, i == 1 ? 1 : 0, M)).is_zero();
        return outcome_bool(ok);
    });
    if (law.D == 0) return;
    rec.check("group-law-commutative", "group-law", "D=8", [&] {
        bool ok = true;
        for (long i = 0; i < D; ++i)
            for (long j = 0; i + j < D; ++j) ok = ok && (law.at(i, j) - law.at(j, i)).is_zero();
        return outcome_bool(ok);
    });
    if (G.kind() == ModelKind::Multiplicative)
        rec.check("multiplicative-law", "group-law", "F=X+Y+XY", [&] {
            bool ok = true;
            for (long i = 0; i < D; ++i)
                for (long j = 0; i + j < D; ++j) {
                    long expect = (i + j == 1 || (i == 1 && j == 1)) ? 1 : 0;
                    ok = ok && (law.at(i, j) - Scalar::from_int(K, expect, M)).is_zero();
                }
            return outcome_bool(ok);
        });
    Series z = Series::monomial(I(K, 1), 1);
    Series x = z + Series::monomial(I(K, 2), 3);
    Series y = Series(K, 1, {rand_int(K, rng, 60), rand_int(K, rng, 60)});
    Series w = Series::monomial(I(K, -1), 1) + Series::monomial(I(K, 1), 2);
    Series fr = G.frobenius(60);
    rec.check("group-law-associative", "group-law", "D=8", [&] {
        return outcome_series(G.add(law, G.add(law, x, y), w), G.add(law, x, G.add(law, y, w)), D, 3);
    });
    rec.check("frobenius-endomorphism", "frobenius-endomorphism", "D=8", [&] {
        return outcome_series(G.add(law, compose(fr, x, D), compose(fr, y, D)), compose(fr, G.add(law, x, y), D), D, 3);
    });
    rec.check("invariant-differential", "invariant-differential", "D=8",
              [&] { return outcome_series(law.slice_y(1).invert(), G.g(), D, D - 1); });
    rec.check("exp-log", "log-exp-inverse", "", [&] { return outcome_series(compose(G.exp(), G.log()), z, 24, 20); });
    rec.check("log-exp", "log-exp-inverse", "", [&] { return outcome_series(compose(G.log(), G.exp()), z, 24, 20); });
    for (long i = 0; i < 10; ++i) {
        Scalar a = rand_int(K, rng, M);
        std::string par = "case=" + pad(i);
        Series A;
        rec.check("log-a-mult", "dlog-log", par, [&] {
            A = G.a_mult(a);
            return outcome_series(compose(G.log(), A), G.log().scale(a), kInf, 1);
        });
        if (A.field() == nullptr) continue;
        rec.check("g-a-mult", "dlog-g", par, [&] {
            return outcome_series(G.g().scale(a), compose(G.g(), A) * A.derivative(), kInf, 1, M - 4);
        });
        rec.check("a-mult-frobenius", "a-mult-commutes-frobenius", par,
                  [&] { return outcome_series(compose(fr, A), compose(A, fr, 20), kInf, 1); });
    }
}

// ---------------------------------------------------------------- mellin

void suite_mellin(const RunConfig& cfg, Recorder& rec) {
    Env e = make_env(cfg, cfg.N);
    const OperatorContext& C = *e.C;
    const LocalField* K = e.K();
    const long M = cfg.M, N = cfg.N, p = K->p();
    std::mt19937_64 rng(suite_seed(cfg, "mellin"));
    std::vector<long> as;
    for (long a : {1L, 2L, -1L, 4L, 5L, -7L, 7L, 8L})
        if (a % p != 0 && as.size() < 6) as.push_back(a);
    for (long a : as) {
        Series ea = eta(C, a, N).series;
        for (long n = 0; n <= 6; ++n)
            rec.check("eta-evaluation", "mellin-evaluation", "a=" + std::to_string(a) + " n=" + std::to_string(n), [&] {
                return outcome_equal(mellin_eval(C, MellinElement::make(C, ea), n).value, I(K, a).pow(n), M);
            });
    }
    for (long a : {2L, -1L}) {
        Series ea = eta(C, a, N).series;
        auto G = MellinElement::make(C, ea);
        auto L = MellinElement::make(C, C.model().log() * ea);
        for (long n = 1; n <= 6; ++n)
            rec.check("log-shift", "mellin-log", "a=" + std::to_string(a) + " n=" + std::to_string(n), [&] {
                return outcome_equal(mellin_eval(C, L, n).value, mellin_eval(C, G, n - 1).value.mul_int(n));
            });
    }
    Series F = dlog(C, cyclotomic_coleman(C, 2), N);
    for (long n = 0; n <= 4; ++n) {
        std::string par = "F=dlog(cyclo(2)) n=" + std::to_string(n);
        OneMinusPhiCheck chk;
        rec.check("one-minus-phi", "mellin-phi", par, [&] {
            chk = one_minus_phi_eval(C, F, n);
            Outcome o = outcome_equal(chk.lhs, chk.rhs);
            o.pass = o.pass && chk.agree;
            return o;
        });
        if (chk.factor.field() && chk.factor.is_zero())
            rec.check("one-minus-phi-forced-zero", "mellin-phi", par,
                      [&] { return outcome_equal(chk.lhs, Scalar::zero(K, kInf)); });
    }
    for (long n : {1L, 2L})
        for (long t = 0; t < 2; ++t) {
            Series X = rand_laurent(K, rng, 0, N - 1, M + 10);
            rec.check("decomposition-reassembly", "psi-zero-decomposition", "n=" + std::to_string(n) + " case=" + pad(t), [&] {
                auto parts = decompose(C, X, n);
                return outcome_series(reassemble(C, parts, n), X, N, N, M - 2);
            });
        }
    for (long t = 0; t < 3; ++t) {
        Series X = rand_laurent(K, rng, 0, N - 1, M + 10);
        rec.check("psi-zero-projector", "psi-zero-decomposition", "case=" + pad(t),
                  [&] { return outcome_bool(all_zero(C.psi(psi0_project(C, X).series()))); });
    }
    auto G2 = MellinElement::make(C, eta(C, 2, N).series);
    for (long n = 0; n <= 4; ++n)
        rec.check("twist-shift", "mellin-twist", "a=2 n=" + std::to_string(n), [&] {
            return outcome_equal(mellin_eval(C, twist(C, G2), n).value, mellin_eval(C, G2, n + 1).value);
        });
}

// ---------------------------------------------------------------- residue-identity

void suite_residue_identity(const RunConfig& cfg, Recorder& rec) {
    // the explicit elements are built on a shorter window: the Mellin side needs N(N-1) extra precision
    const long N = std::min(cfg.N, 24L);
    Env e = make_env(cfg, N);
    const OperatorContext& C = *e.C;
    const LocalField* K = e.K();
    const long M = cfg.M, p = K->p();
    std::mt19937_64 rng(suite_seed(cfg, "residue-identity"));
    const Scalar q = I(K, C.q()), qm = (q - I(K, 1)) * q.inverse();

    for (long n : {1L, 2L})
        for (long u = 1; u < p; ++u) {
            long pn = n == 1 ? p : p * p;
            std::string par = "b=" + std::to_string(1 + u * pn) + " n=" + std::to_string(n);
            rec.check("xi-tilde-constant", "xi-tilde-residue", par, [&] {
                Series x = xi_tilde(C, make_basis(C, 1 + u * pn, n), N);
                Outcome o = outcome_equal(x.shift(1).coeff(0), I(K, pn), M);
                if (x.lo() != -1) o = outcome_bool(false, "pole order " + std::to_string(-x.lo()));
                return o;
            });
            rec.check("theta-descent", "theta-mellin", par, [&] {
                ThetaMellin th = theta_mellin(C, make_basis(C, 1 + u * pn, n), N);
                Series img = th.xi;
                for (long k = 0; k < n; ++k) img = C.phi(img);
                return outcome_series(img, th.quotient, N, 1);
            });
            rec.check("xi-normalization", "theta-mellin", par, [&] {
                ThetaMellin th = theta_mellin(C, make_basis(C, 1 + u * pn, n), N);
                // xi_b agrees with log_LT/Z at Z = 0
                Series lz = C.model().log().truncate(N + 1).truncate_below(1, kInf).shift(-1);
                return outcome_equal(th.xi.coeff(0), lz.coeff(0), M);
            });
            rec.check("theta-leading", "theta-mellin", par, [&] {
                BasisTuple b = make_basis(C, 1 + u * pn, n);
                ThetaMellin th = theta_mellin(C, b, N);
                Scalar l = b.log_b(M + 10);
                Series frac = th.image.scale(l.inverse());
                Outcome o = outcome_equal(frac.coeff(0), l.inverse());
                Outcome o1 = outcome_equal(frac.coeff(1), I(K, u * pn).inverse());
                return o.pass ? o1 : o;
            });
            rec.check("theta-psi-zero", "theta-mellin", par, [&] {
                ThetaMellin th = theta_mellin(C, make_basis(C, 1 + u * pn, n), N);
                return outcome_bool(all_zero(C.psi(th.image)));
            });
        }

    std::vector<GroupRobbaElement> fam;
    std::vector<GroupRobbaElement> xis;
    for (long u = 1; u < p; ++u) xis.push_back(xi_hat(C, make_basis(C, 1 + u * p, 1), N));
    for (size_t i = 0; i < xis.size(); ++i) {
        std::string par = "b=" + std::to_string(1 + static_cast<long>(i + 1) * p);
        rec.check("varsigma-xi-hat", "varsigma-value", par, [&] { return outcome_equal(varsigma(C, xis[i]), I(K, 1), M); });
        rec.check("varrho-xi-hat", "varrho-value", par, [&] { return outcome_equal(varrho(C, xis[i]), qm, M); });
        rec.check("level-pairing", "augmentation-pairing", par,
                  [&] { return outcome_equal(level_pairing(C, xis[i], dirac(C, I(K, 1 + p), N)), q.inverse()); });
        rec.check("twist-invariance", "twist-compatibility", par,
                  [&] { return outcome_equal(varsigma(C, twist_element(C, xis[i])), I(K, 1)); });
        fam.push_back(xis[i]);
    }
    const std::vector<long> us{1, 1 + p, 1 - p, 1 + 2 * p, 1 + 3 * p, 1 - 2 * p};
    std::vector<GroupRobbaElement> diracs;
    for (long u : us) diracs.push_back(dirac(C, I(K, u), N));
    for (const auto& d : diracs) fam.push_back(d);
    for (long u : {1 + p, 1 - p, 1 + 2 * p}) fam.push_back(xi_hat(C, make_basis(C, 1 + p, 1), N, I(K, u)));
    for (long t = 0; t < 8; ++t) {
        long c1 = static_cast<long>(rng() % 19) - 9, c2 = static_cast<long>(rng() % 19) - 9, c3 = static_cast<long>(rng() % 19) - 9;
        const auto& x = xis[rng() % xis.size()];
        const auto& d1 = diracs[rng() % diracs.size()];
        const auto& d2 = diracs[rng() % diracs.size()];
        std::string label = std::to_string(c1) + "*" + x.label + " + " + std::to_string(c2) + "*" + d1.label + " + " +
                            std::to_string(c3) + "*" + d2.label;
        fam.push_back(combine({I(K, c1), I(K, c2), I(K, c3)}, {x, d1, d2}, label));
    }
    fam.push_back(zero_element(C));
    rec.check("family-size", "residue-identity", "", [&] {
        return outcome_bool(fam.size() >= 20, "elements=" + std::to_string(fam.size()));
    });
    parallel_cases(rec, "residue-identity", cfg.timing, static_cast<long>(fam.size()), [&](long i, Recorder& r) {
        const auto& x = fam[static_cast<size_t>(i)];
        r.check("residue-identity", "residue-identity", "element=" + pad(i) + " " + x.label, [&] {
            ResidueIdentityReport rep = residue_identity_check(C, {x});
            const auto& en = rep.entries.front();
            return outcome_equal(en.varsigma, en.rhs);
        });
    });
}

// ---------------------------------------------------------------- coleman-kato

std::vector<mpq_class> bernoulli(long n) {
    std::vector<mpq_class> B(static_cast<size_t>(n + 1));
    B[0] = 1;
    for (long m = 1; m <= n; ++m) {
        mpq_class acc = 0;
        mpz_class b = 1;
        for (long j = 0; j < m; ++j) {
            acc += b * B[static_cast<size_t>(j)];
            b = b * (m + 1 - j) / (j + 1);
        }
        B[static_cast<size_t>(m)] = -acc / (m + 1);
    }
    return B;
}

// d_inv^r log(((1+Z)^c - 1)/Z) at 0
mpq_class cyclo_derivative(long c, long r) {
    if (r == 1) return mpq_class(c - 1, 2);
    mpz_class cr;
    mpz_ui_pow_ui(cr.get_mpz_t(), static_cast<unsigned long>(c), static_cast<unsigned long>(r));
    return mpq_class(cr - 1) * bernoulli(r)[static_cast<size_t>(r)] / r;
}

void suite_coleman_kato(const RunConfig& cfg, Recorder& rec) {
    const long N = std::min(cfg.N, 48L);
    Env e = make_env(cfg, N);
    const OperatorContext& C = *e.C;
    const LocalField* K = e.K();
    const long p = K->p(), M = cfg.M;
    std::mt19937_64 rng(suite_seed(cfg, "coleman-kato"));
    rec.check("norm-coherent", "coleman-norm", "g=Z",
              [&] { return outcome_bool(is_norm_coherent(C, Series::monomial(I(K, 1), 1)).coherent); });
    for (long c : {2L, 1 + p}) {
        std::string cs = "c=" + std::to_string(c);
        rec.check("norm-coherent", "coleman-norm", "g=(1+Z)^c-1 " + cs,
                  [&] { return outcome_bool(is_norm_coherent(C, cyclotomic_coleman(C, c, true)).coherent); });
        rec.check("psi-fixes-dlog", "coleman-dlog", cs, [&] {
            Series d = dlog_map(C, coleman_series(C, cyclotomic_coleman(C, c, true)));
            return outcome_series(C.psi(d), d, kInf, 1);
        });
        Series g = cyclotomic_coleman(C, c);
        for (long r = 2; r <= 5; ++r) {
            std::string par = cs + " r=" + std::to_string(r);
            RegulatorValue v;
            rec.check("regulator-closed-form", "regulator-composite", par, [&] {
                v = regulator_value(C, g, r, I(K, 1));
                return outcome_equal(v.value, v.closed, M - 6);
            });
            rec.check("regulator-bernoulli", "regulator-composite", par, [&] {
                mpz_class pr;
                mpz_ui_pow_ui(pr.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(r - 1));
                mpq_class expect = mpq_class(1 - pr) * r * cyclo_derivative(c, r);
                return outcome_equal(regulator_value(C, g, r, I(K, 1)).value, Q(K, expect));
            });
        }
        for (long r : {2L, 3L}) {
            Scalar a = rand_unit(K, rng, M);
            for (const Scalar& aa : {I(K, 1), a})
                rec.check("cw-interpolation", "interpolation-kato", cs + " r=" + std::to_string(r) + (aa.equals(I(K, 1)) ? " a=1" : " a=random"), [&] {
                    InterpolationCheck chk = cw_interpolation_check(C, g, r, aa);
                    Outcome o = outcome_equal(chk.lhs, chk.rhs);
                    o.pass = o.pass && chk.agree;
                    return o;
                });
        }
    }
}

// ---------------------------------------------------------------- koszul

IntMatrix poly_in(const IntMatrix& A, const std::vector<long>& c, long mod) {
    IntMatrix r(A.rows, A.cols), pw = IntMatrix::identity(A.rows);
    for (long x : c) {
        r = mat_add(r, mat_scale(pw, x, mod), mod);
        pw = mat_mul(pw, A, mod);
    }
    return r;
}

FiniteActionModule random_module(std::mt19937_64& rng, long p, long m, long rank, int d) {
    FiniteActionModule M;
    M.p = p;
    M.m = m;
    M.rank = rank;
    const long mod = M.modulus();
    IntMatrix A(rank, rank);
    for (auto& v : A.a) v = static_cast<long>(rng() % static_cast<unsigned long>(mod));
    auto draw = [&] { return static_cast<long>(rng() % static_cast<unsigned long>(mod)); };
    for (int i = 0; i < d; ++i) {
        long c0 = draw();
        while (c0 % p == 0) c0 = draw();
        M.gammas.push_back(poly_in(A, {c0, draw() * p % mod, draw() * p % mod}, mod));
    }
    M.f = poly_in(A, {draw(), draw(), draw()}, mod);
    M.has_f = true;
    return M;
}

std::vector<IntMatrix> minus_one(const std::vector<IntMatrix>& f, long mod) {
    std::vector<IntMatrix> r;
    for (const auto& x : f) r.push_back(mat_add(x, mat_scale(IntMatrix::identity(x.rows), -1, mod), mod));
    return r;
}

void suite_koszul(const RunConfig& cfg, Recorder& rec) {
    const long p = cfg.field.p;
    std::mt19937_64 rng(suite_seed(cfg, "koszul"));
    for (int d = 1; d <= 4; ++d) {
        std::string par = "d=" + std::to_string(d);
        DualityReport dr;
        rec.check("duality-check", "koszul-self-duality", par, [&] {
            dr = duality_check(d);
            return outcome_bool(dr.all_commute, "squares=" + std::to_string(dr.squares.size()));
        });
        for (const auto& sq : dr.squares)
            rec.check("duality-square", "koszul-self-duality", par + " q=" + std::to_string(sq.q),
                      [&] { return outcome_bool(sq.commutes); });
        rec.check("trivial-action-ranks", "koszul-trivial-action", par, [&] {
            FiniteActionModule M{p, 1, 1, std::vector<IntMatrix>(static_cast<size_t>(d), IntMatrix::identity(1)), {}, false};
            auto h = cohomology(build_koszul(M));
            bool ok = true;
            long binom = 1;
            for (int q = 0; q <= d; ++q) {
                ok = ok && h[static_cast<size_t>(q)].log_order() == binom;
                binom = binom * (d - q) / (q + 1);
            }
            return outcome_bool(ok);
        });
    }
    for (long t = 0; t < 12; ++t) {
        FiniteActionModule M = random_module(rng, p, 1 + t % 2, 1 + t % 3, 1 + static_cast<int>(t % 4));
        rec.check("d-squared-zero", "koszul-differential", "module=" + pad(t) + " d=" + std::to_string(M.gammas.size()),
                  [&] { return outcome_bool(build_koszul(M).d_squared_zero()); });
    }
    for (long t = 0; t < 10; ++t) {
        FiniteActionModule M = random_module(rng, p, 1 + t % 2, 1 + (t / 2) % 2, 1 + static_cast<int>(t / 5));
        std::string base = "module=" + pad(t) + " d=" + std::to_string(M.gammas.size()) + " m=" + std::to_string(M.m);
        ChainComplex K;
        std::vector<IntMatrix> fm1;
        ChainComplex Fb;
        rec.check("fibre-build", "mapping-fibre", base, [&] {
            K = build_koszul(M);
            fm1 = minus_one(koszul_endomorphism(M, M.f), K.modulus());
            Fb = mapping_fibre(K, fm1);
            return outcome_bool(Fb.d_squared_zero());
        });
        if (Fb.ranks.empty()) continue;
        auto hF = cohomology(Fb);
        for (long i = 0; i <= Fb.hi(); ++i)
            rec.check("fibre-spectral-orders", "fibre-exact-sequence", base + " i=" + std::to_string(i), [&] {
                long expect = 0;
                if (i >= 1 && i - 1 <= K.hi()) expect += log_order_kernel(K, fm1, i - 1);
                if (i <= K.hi()) expect += log_order_kernel(K, fm1, i);
                long got = hF[static_cast<size_t>(i)].log_order();
                Outcome o = outcome_bool(got == expect, "log_p|h|=" + std::to_string(got));
                if (!o.pass) {
                    o.lhs = std::to_string(got);
                    o.rhs = std::to_string(expect);
                }
                return o;
            });
        rec.check("euler-characteristic", "fibre-euler", base,
                  [&] { return outcome_bool(euler_log(hF) == euler_log(Fb) && euler_log(Fb) == 0); });
        rec.check("fibre-identity-acyclic", "mapping-fibre", base, [&] {
            ChainComplex A = mapping_fibre(K, koszul_endomorphism(M, IntMatrix::identity(M.rank)));
            long total = 0;
            for (const auto& g : cohomology(A)) total += g.log_order();
            return outcome_bool(total == 0);
        });
    }
}

}  // namespace

std::vector<CheckRecord> run_suite(const std::string& suite, const RunConfig& cfg) {
    Recorder rec(suite, cfg.timing);
    try {
        if (suite == "core-ops") suite_core_ops(cfg, rec);
        else if (suite == "psi-omega") suite_psi_omega(cfg, rec);
        else if (suite == "formal-group") suite_formal_group(cfg, rec);
        else if (suite == "mellin") suite_mellin(cfg, rec);
        else if (suite == "residue-identity") suite_residue_identity(cfg, rec);
        else if (suite == "coleman-kato") suite_coleman_kato(cfg, rec);
        else if (suite == "koszul") suite_koszul(cfg, rec);
        else throw Error(Err::ConfigError, "unknown suite '" + suite + "'");
    } catch (const Error& e) {
        if (e.code() == Err::ConfigError) throw;
        rec.check("suite-setup", "", "", [&] {
            Outcome o;
            o.lhs = e.what();
            o.rhs = "no exception";
            return o;
        });
    }
    return rec.records();
}

IdentityReport run_suites(const RunConfig& cfg) {
    IdentityReport rep;
    rep.config = cfg;
    std::vector<std::future<std::vector<CheckRecord>>> jobs;
    for (const auto& s : cfg.selected()) jobs.push_back(std::async(std::launch::async, [&cfg, s] { return run_suite(s, cfg); }));
    for (auto& j : jobs)
        for (auto& r : j.get()) rep.records.push_back(std::move(r));
    rep.sort();
    return rep;
}

}  // namespace ltc
