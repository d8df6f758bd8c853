#include "padiclab/lvalues.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace padiclab {

namespace {
mpz_class binom(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}
} // namespace

const mpq_class& bernoulli(unsigned n) {
    static std::vector<mpq_class> cache{mpq_class(1), mpq_class(-1, 2)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    while (cache.size() <= n) {
        unsigned m = static_cast<unsigned>(cache.size());
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        mpq_class s = 0;
        for (unsigned k = 0; k < m; ++k) s += mpq_class(binom(m + 1, k)) * cache[k];
        mpq_class b = -s / mpq_class(binom(m + 1, m));
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[n];
}

mpq_class bernoulli_poly(unsigned n, const mpq_class& x) {
    mpq_class acc = 0, xp = 1;
    // B_n(x) = sum_k C(n,k) B_{n-k} x^k
    for (unsigned k = 0; k <= n; ++k) {
        acc += mpq_class(binom(n, k)) * bernoulli(n - k) * xp;
        xp *= x;
    }
    acc.canonicalize();
    return acc;
}

CycloRational gen_bernoulli(unsigned n, const DirichletCharacter& chi) {
    if (n == 0) throw std::invalid_argument("gen_bernoulli: n >= 1");
    unsigned long f = chi.modulus();
    if (f == 1) return CycloRational::from_rational(bernoulli_poly(n, 1));
    CycloRational acc(static_cast<unsigned>(chi.order()));
    for (unsigned long a = 1; a <= f; ++a) {
        auto ex = chi.exponent(static_cast<long>(a));
        if (!ex) continue;
        acc = acc + chi.value(static_cast<long>(a)).scaled(bernoulli_poly(n, mpq_class(a, f)));
    }
    mpz_class fp;
    mpz_ui_pow_ui(fp.get_mpz_t(), f, n - 1);
    return acc.scaled(mpq_class(fp));
}

CycloRational dirichlet_L_nonpos(const DirichletCharacter& chi, long one_minus_n) {
    long n = 1 - one_minus_n;
    if (n < 1) throw std::invalid_argument("dirichlet_L_nonpos: argument must be <= 0");
    return gen_bernoulli(static_cast<unsigned>(n), chi).scaled(mpq_class(-1, n));
}

CycloRational archimedean_constant(const DirichletCharacter& chi, long j, long p) {
    if (j < 2) throw std::invalid_argument("archimedean_constant: j >= 2 required");
    if (chi.is_trivial())
        throw std::domain_error("archimedean_constant: trivial character excluded "
                                "(no regularization of the zeta pole)");
    if (chi.parity() != ((j % 2 == 0) ? 1 : -1))
        throw std::domain_error("archimedean_constant: parity mismatch chi(-1) != (-1)^j");
    DirichletCharacter bar = chi.inverse();
    // (1 - chibar(p) p^{j-1}) L(chibar, 1-j)
    mpz_class pj;
    mpz_ui_pow_ui(pj.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned>(j - 1));
    CycloRational euler =
        CycloRational::from_rational(1, static_cast<unsigned>(bar.order())) -
        bar.value(p).scaled(mpq_class(pj));
    return euler * dirichlet_L_nonpos(bar, 1 - j);
}

} // namespace padiclab
