#include "padiclab/kl.hpp"

#include <omp.h>

#include <numeric>
#include <stdexcept>
#include <vector>

#include "padiclab/lvalues.hpp"

namespace padiclab {

FieldPtr kl_value_field(const DirichletCharacter& chi, long p, int prec) {
    unsigned long e = chi.order();
    if (e <= 2) return nullptr;
    if (e % static_cast<unsigned long>(p) == 0)
        throw std::domain_error("kl: character values of order divisible by p are ramified");
    return UnramifiedField::make(p, static_cast<unsigned>(e), prec);
}

namespace {

struct Branch {
    DirichletCharacter theta; // chi (negative side) or chibar (positive side)
    long g;                   // omega-exponent of the test function
    bool negative;
};

Branch branch_of(const DirichletCharacter& chi, const EvalCharacter& sigma, bool neg) {
    long te = sigma.t_effective();
    if (neg) return {chi, (1 - te) % (sigma.p() - 1), true};
    return {chi.inverse(), te % (sigma.p() - 1), false};
}

// u-variable of the branch: 1 - s (negative side) or s (positive side)
PadicElem branch_u(const Branch& br, const EvalCharacter& sigma, int prec) {
    PadicElem s = sigma.s_at(prec);
    if (br.negative) return PadicElem::one(sigma.p(), prec) - s;
    return s;
}

long branch_u_val(const Branch& br, const EvalCharacter& sigma) {
    return sigma.s_minus_val(br.negative ? 1 : 0);
}

bool pole_branch(const Branch& br, long p) {
    return br.theta.is_trivial() && ((br.g % (p - 1)) + (p - 1)) % (p - 1) == 0;
}

long modulus_F(const DirichletCharacter& theta, const EvalCharacter& sigma) {
    long cond_xi = sigma.wild_exp() ? sigma.p() : 1;
    return std::lcm(static_cast<long>(theta.conductor()), sigma.p() * cond_xi);
}

} // namespace

PadicElem kl_eval_side(const DirichletCharacter& chi, const EvalCharacter& sigma, int M,
                       bool negative_side, FieldPtr K, bool times_u, bool parallel) {
    long p = sigma.p();
    if (chi.conductor() % p == 0) throw std::domain_error("kl_eval: p | cond(chi) unsupported");
    Branch br = branch_of(chi, sigma, negative_side);
    long F = modulus_F(br.theta, sigma);
    long vF = val_of_mpz(F, p, 32);
    long vu = branch_u_val(br, sigma);
    bool at_u0 = vu >= PadicElem::kInfPrec; // u exactly 0

    if (pole_branch(br, p) && vu >= 1 && !times_u)
        throw std::domain_error("kl_eval: pole of the p-adic zeta function: s within p^{-1} of "
                                "the pole point; multiply by (s-1) explicitly to regularize");
    const bool use_limit = at_u0 && !times_u;
    long loss = (times_u || at_u0) ? 0 : std::min<long>(vu, M);
    int Mw = static_cast<int>(M + loss + vF + 2);

    if (!K) K = kl_value_field(chi, p, Mw + 2);
    if (K && static_cast<int>(Mw + 2) > K->prec())
        K = UnramifiedField::make(p, K->m(), Mw + 2);

    // precompute binomial-tail data
    int Kmax = static_cast<int>((Mw + 3) / vF) + 3;
    PadicElem u = branch_u(br, sigma, Mw + 2);
    std::vector<PadicElem> binom_u(Kmax + 1), bern(Kmax + 1);
    binom_u[0] = PadicElem::one(p, Mw + 2);
    for (int k = 1; k <= Kmax; ++k) {
        // C(u, k) = C(u, k-1) (u - k + 1) / k
        PadicElem factor = (u - PadicElem::from_int(p, k - 1, Mw + 2));
        binom_u[k] = binom_u[k - 1] * factor;
        long vk = val_of_mpz(k, p, 32);
        mpz_class kunit = mpz_class(k) / pow_mpz(p, static_cast<int>(vk));
        binom_u[k] =
            (binom_u[k] * PadicElem::from_rational(p, 1, kunit, Mw + 2)).shift(-vk);
    }
    for (int k = 0; k <= Kmax; ++k) {
        const mpq_class& b = bernoulli(static_cast<unsigned>(k));
        bern[k] = PadicElem::from_rational(p, b.get_num(), b.get_den(), Mw + 2);
    }

    const long ge = ((br.g % (p - 1)) + (p - 1)) % (p - 1);
    auto term_at = [&](long a) -> PadicElem {
        auto ex = br.theta.exponent(a);
        if (!ex) return PadicElem::zero(p, Mw, K);
        PadicElem th = br.theta.value_padic(a, p, K, Mw);
        PadicElem x = PadicElem::from_int(p, a, Mw + 2);
        auto [w, ang] = x.omega_angle_split();
        PadicElem wa = th * w.pow_int(ge);
        PadicElem fa = PadicElem::from_rational(p, F, a, Mw + 2); // F/a, val >= 1
        PadicElem tail = PadicElem::zero(p, Mw + 2);
        PadicElem fak = PadicElem::one(p, Mw + 2);
        if (use_limit) {
            // d/du at u=0: log<a> + sum_{k>=1} (-1)^{k-1} (B_k / k) (F/a)^k
            tail = ang.log();
            for (int k = 1; k <= Kmax; ++k) {
                fak = fak * fa;
                long vk = val_of_mpz(k, p, 32);
                mpz_class kunit = mpz_class(k) / pow_mpz(p, static_cast<int>(vk));
                PadicElem t =
                    (bern[k] * fak * PadicElem::from_rational(p, 1, kunit, Mw + 2)).shift(-vk);
                tail = (k % 2 == 1) ? tail + t : tail - t;
            }
            return wa * tail;
        }
        for (int k = 0; k <= Kmax; ++k) {
            if (k) fak = fak * fa;
            tail = tail + binom_u[k] * bern[k] * fak;
        }
        return wa * ang.pow_principal(u) * tail;
    };

    PadicElem sum = PadicElem::zero(p, Mw, K);
    if (parallel) {
        int nt = omp_get_max_threads();
        std::vector<PadicElem> part(nt);
        for (auto& e : part) e = PadicElem::zero(p, Mw, K);
#pragma omp parallel for schedule(dynamic, 8)
        for (long a = 1; a <= F; ++a) {
            if (a % p == 0) continue;
            PadicElem t = term_at(a);
            if (!t.is_zero()) {
                int id = omp_get_thread_num();
                part[id] = part[id] + t;
            }
        }
        for (const auto& e : part) sum = sum + e; // exact addition: order-free
    } else {
        for (long a = 1; a <= F; ++a) {
            if (a % p == 0) continue;
            sum = sum + term_at(a);
        }
    }

    // value = -S / (u F), or -S/F for times_u / the u->0 limit
    PadicElem val = -(sum * PadicElem::from_rational(p, 1, mpz_class(F) / pow_mpz(p, vF),
                                                     Mw + 2))
                         .shift(-vF);
    if (!at_u0 && !times_u) val = val / u;
    if (times_u && br.negative) val = -val; // (s-1) = -u on the negative side
    return val.reduce_prec(M);
}

PadicElem kl_eval(const DirichletCharacter& chi, const EvalCharacter& sigma, int M, FieldPtr K,
                  bool times_u, bool parallel) {
    return kl_eval_side(chi, sigma, M, sigma.sign() == -chi.parity(), std::move(K), times_u,
                        parallel);
}

mpq_class measure_disc_moment(long j, long a, long L, long c) {
    mpz_class cinv_a; // c^{-1} a mod L
    mpz_class cz(c), Lz(L);
    mpz_class ci;
    if (mpz_invert(ci.get_mpz_t(), cz.get_mpz_t(), Lz.get_mpz_t()) == 0)
        throw std::invalid_argument("measure: gcd(c, L) > 1");
    cinv_a = (ci * a) % Lz;
    if (cinv_a < 0) cinv_a += Lz;
    mpz_class cj;
    mpz_pow_ui(cj.get_mpz_t(), cz.get_mpz_t(), static_cast<unsigned long>(j + 1));
    mpz_class Lj;
    mpz_pow_ui(Lj.get_mpz_t(), Lz.get_mpz_t(), static_cast<unsigned long>(j));
    mpq_class r = bernoulli_poly(static_cast<unsigned>(j + 1), mpq_class(a, L)) -
                  mpq_class(cj) * bernoulli_poly(static_cast<unsigned>(j + 1),
                                                 mpq_class(cinv_a, Lz));
    r *= mpq_class(Lj, j + 1);
    r.canonicalize();
    return r;
}

PadicElem kl_eval_measure(const DirichletCharacter& chi, const EvalCharacter& sigma, long c,
                          int level_n, int M, int degree, FieldPtr K) {
    long p = sigma.p();
    if (chi.conductor() % p == 0)
        throw std::domain_error("kl_eval_measure: p | cond(chi) unsupported");
    if (level_n < 1) throw std::invalid_argument("kl_eval_measure: level n >= 1");
    Branch br = branch_of(chi, sigma, sigma.sign() == -chi.parity());
    long N0 = static_cast<long>(br.theta.conductor());
    if (c <= 1 || std::gcd(c, p * N0) != 1)
        throw std::invalid_argument("kl_eval_measure: need c > 1 coprime to pN");
    if (pole_branch(br, p) && branch_u_val(br, sigma) >= 1)
        throw std::domain_error("kl_eval_measure: pole branch of the p-adic zeta function");

    // regularization divisor D = 1 - theta(c) omega(c)^g <c>^u; probe its
    // valuation first, then fix the working precision
    const long ge = ((br.g % (p - 1)) + (p - 1)) % (p - 1);
    long vD = 0;
    int Mw = M + 6;
    for (int attempt = 0; attempt < 2; ++attempt) {
        Mw = static_cast<int>(M + vD + 6);
        if (!K || (K && Mw + 2 > K->prec()))
            K = kl_value_field(chi, p, Mw + 2);
        PadicElem uprobe = branch_u(br, sigma, Mw + 2);
        PadicElem cc = PadicElem::from_int(p, c, Mw + 2);
        auto [wc, angc] = cc.omega_angle_split();
        PadicElem D0 = PadicElem::one(p, Mw, K) - br.theta.value_padic(c, p, K, Mw) *
                                                      wc.pow_int(ge) *
                                                      angc.pow_principal(uprobe);
        if (D0.is_zero())
            throw std::domain_error("kl_eval_measure: regularization degenerate at sigma; "
                                    "choose a different auxiliary c");
        if (D0.val() == vD) break;
        vD = D0.val();
    }
    PadicElem u = branch_u(br, sigma, Mw + 2);
    PadicElem cc = PadicElem::from_int(p, c, Mw + 2);
    auto [wc, angc] = cc.omega_angle_split();
    PadicElem D = PadicElem::one(p, Mw, K) - br.theta.value_padic(c, p, K, Mw) *
                                                 wc.pow_int(ge) * angc.pow_principal(u);

    mpz_class Lz = pow_mpz(p, level_n) * N0;
    if (!Lz.fits_slong_p())
        throw std::invalid_argument("kl_eval_measure: level too deep");
    long L = Lz.get_si();

    PadicElem um1 = u - PadicElem::one(p, Mw + 2);
    // C(u-1, i) for i <= degree
    std::vector<PadicElem> bin(degree + 1);
    bin[0] = PadicElem::one(p, Mw + 2);
    for (int i = 1; i <= degree; ++i) {
        PadicElem factor = um1 - PadicElem::from_int(p, i - 1, Mw + 2);
        long vi = val_of_mpz(i, p, 32);
        mpz_class iunit = mpz_class(i) / pow_mpz(p, static_cast<int>(vi));
        bin[i] =
            (bin[i - 1] * factor * PadicElem::from_rational(p, 1, iunit, Mw + 2)).shift(-vi);
    }

    PadicElem sum = PadicElem::zero(p, Mw, K);
#pragma omp parallel
    {
        PadicElem part = PadicElem::zero(p, Mw, K);
#pragma omp for schedule(dynamic, 16)
        for (long a = 1; a < L; ++a) {
            if (std::gcd(a, L) != 1) continue;
            auto ex = br.theta.exponent(a);
            if (!ex) continue;
            PadicElem x = PadicElem::from_int(p, a, Mw + 2);
            auto [w, ang] = x.omega_angle_split();
            PadicElem base = br.theta.value_padic(a, p, K, Mw) * w.pow_int(ge - 1) *
                             ang.pow_principal(um1);
            // disc contribution: sum_i C(u-1, i) a^{-i} M_i(a, L)
            // with M_i = sum_j C(i,j) (-a)^{i-j} R_j
            std::vector<mpq_class> R(degree + 1);
            for (int j = 0; j <= degree; ++j) R[j] = measure_disc_moment(j, a, L, c);
            PadicElem disc = PadicElem::zero(p, Mw);
            for (int i = 0; i <= degree; ++i) {
                mpq_class Mi = 0;
                mpz_class cij;
                for (int j = 0; j <= i; ++j) {
                    mpz_bin_uiui(cij.get_mpz_t(), i, j);
                    mpz_class ma;
                    mpz_ui_pow_ui(ma.get_mpz_t(), static_cast<unsigned long>(a),
                                  static_cast<unsigned long>(i - j));
                    if ((i - j) % 2 == 1) ma = -ma;
                    Mi += mpq_class(cij * ma) * R[j];
                }
                Mi.canonicalize();
                // a^{-i} M_i
                mpz_class ai;
                mpz_ui_pow_ui(ai.get_mpz_t(), static_cast<unsigned long>(a),
                              static_cast<unsigned long>(i));
                mpq_class q = Mi / mpq_class(ai);
                q.canonicalize();
                disc = disc +
                       bin[i] * PadicElem::from_rational(p, q.get_num(), q.get_den(), Mw + 2);
            }
            part = part + base * disc;
        }
#pragma omp critical
        sum = sum + part; // exact addition: order-free
    }

    PadicElem val = -(sum / D);
    // proven quadrature exponent: n (degree+1) - ilog_p(degree+2) - 1, minus
    // the regularization loss
    long ilog = 0;
    for (long t = degree + 2; t >= p; t /= p) ++ilog;
    long err_exp = static_cast<long>(level_n) * (degree + 1) - ilog - 1 - vD;
    int out = static_cast<int>(std::min<long>(M, err_exp));
    return val.reduce_prec(out);
}

PadicElem kl_eval_measure_auto(const DirichletCharacter& chi, const EvalCharacter& sigma,
                               long c, int level_n, int M, FieldPtr K) {
    int d = static_cast<int>((M + 4) / level_n) + 1;
    return kl_eval_measure(chi, sigma, c, level_n, M, d, std::move(K));
}

PadicElem circular_unit_log_sum(const DirichletCharacter& chi, long p, const FieldPtr& K,
                                int M) {
    if (!chi.is_primitive() || chi.is_trivial() || chi.parity() != 1)
        throw std::domain_error("circular_unit_log_sum: chi must be even, nontrivial, primitive");
    long N = static_cast<long>(chi.conductor());
    if (N % p == 0) throw std::domain_error("circular_unit_log_sum: p | N unsupported");
    if (!K || K->m() % std::lcm<unsigned long>(chi.conductor(), chi.order()) != 0)
        throw std::invalid_argument("circular_unit_log_sum: field lacks needed roots of unity");
    PadicElem zN = PadicElem::zeta(K, M + 2).pow_int(mpz_class(K->m() / N));
    DirichletCharacter bar = chi.inverse();
    PadicElem acc = PadicElem::zero(p, M, K);
    PadicElem za = PadicElem::one(p, M + 2, K);
    for (long a = 1; a < N; ++a) {
        za = za * zN;
        auto ex = bar.exponent(a);
        if (!ex) continue;
        PadicElem term = (PadicElem::one(p, M + 2, K) - za).log();
        acc = acc + bar.value_padic(a, p, K, M + 2) * term;
    }
    return acc.reduce_prec(M);
}

LeopoldtCheck leopoldt_check(const DirichletCharacter& chi, long p, int M) {
    unsigned long em = std::lcm(chi.conductor(), chi.order());
    auto K = UnramifiedField::make(p, static_cast<unsigned>(em), M + 4);
    PadicElem S = circular_unit_log_sum(chi, p, K, M + 2);
    long N = static_cast<long>(chi.conductor());
    // -(1 - chi(p) p^{-1}) (tau(chi)/N) S(chi)
    PadicElem euler = PadicElem::one(p, M + 2, K) -
                      chi.value_padic(p, p, K, M + 2) *
                          PadicElem::from_rational(p, 1, p, M + 2);
    PadicElem tau = chi.gauss_sum(p, K, M + 2);
    PadicElem lhs = -(euler * tau * PadicElem::from_rational(p, 1, N, M + 2) * S);

    EvalCharacter s1(p, mpz_class(1), 1, 0);
    PadicElem rhs = kl_eval(chi, s1, M + 2, K);
    if (kLeopoldtSign < 0) rhs = -rhs;

    LeopoldtCheck out{lhs, rhs, M - 2, false};
    out.pass = lhs.equal_mod(rhs, M - 2);
    return out;
}

KLFunction::KLFunction(DirichletCharacter chi, long p, int M, std::string backend)
    : chi_(std::move(chi)), p_(p), M_(M), backend_(std::move(backend)) {
    K_ = kl_value_field(chi_, p_, M_ + 8);
}

PadicElem KLFunction::eval(const EvalCharacter& sigma) const {
    std::string key = sigma.describe();
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    long c = 2;
    while (std::gcd(c, p_ * static_cast<long>(chi_.conductor())) != 1) ++c;
    PadicElem v = backend_ == "measure" ? kl_eval_measure_auto(chi_, sigma, c, 2, M_, K_)
                                        : kl_eval(chi_, sigma, M_, K_);
    std::lock_guard<std::mutex> lk(mu_);
    cache_.emplace(key, v); // idempotent: recomputation yields identical bits
    return v;
}

} // namespace padiclab
