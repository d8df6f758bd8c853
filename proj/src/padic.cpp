#include "padiclab/padic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace padiclab {

mpz_class pow_mpz(long p, int e) {
    if (e < 0) throw std::invalid_argument("pow_mpz: negative exponent");
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

long val_of_mpz(const mpz_class& n, long p, long cap) {
    if (n == 0) return cap;
    mpz_class q = n, r;
    long v = 0;
    while (v < cap) {
        mpz_class quo, rem;
        mpz_tdiv_qr_ui(quo.get_mpz_t(), rem.get_mpz_t(), q.get_mpz_t(),
                       static_cast<unsigned long>(p));
        if (rem != 0) break;
        q = quo;
        ++v;
    }
    return v;
}

namespace {

// ---------- F_p[y] helpers (small p) for residue-field construction ----------

long fp_mul(long a, long b, long p) {
    return static_cast<long>((static_cast<__int128>(a) * b) % p);
}

long fp_inv(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    if (nr < 0) nr += p;
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::domain_error("fp_inv: not invertible");
    return t < 0 ? t + p : t;
}

using FpPoly = std::vector<long>; // coefficients mod p, low to high

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& h, long p) {
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + fp_mul(a[i], b[j], p)) % p;
    // h monic of degree f
    size_t f = h.size() - 1;
    for (size_t i = c.size(); i-- > f;) {
        long t = c[i];
        if (t == 0) continue;
        c[i] = 0;
        for (size_t j = 0; j < f; ++j)
            c[i - f + j] = ((c[i - f + j] - fp_mul(t, h[j], p)) % p + p) % p;
    }
    c.resize(f);
    fp_trim(c);
    return c;
}

FpPoly fp_powmod(FpPoly a, mpz_class e, const FpPoly& h, long p) {
    FpPoly r{1};
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fp_mulmod(r, a, h, p);
        a = fp_mulmod(a, a, h, p);
        e >>= 1;
    }
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        // a mod b
        FpPoly r = a;
        long lead_inv = fp_inv(b.back(), p);
        while (r.size() >= b.size()) {
            long t = fp_mul(r.back(), lead_inv, p);
            size_t off = r.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j)
                r[off + j] = ((r[off + j] - fp_mul(t, b[j], p)) % p + p) % p;
            fp_trim(r);
            if (r.size() < b.size()) break;
        }
        a = b;
        b = r;
    }
    return a;
}

std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    if (n > 1) out.push_back(n);
    return out;
}

bool fp_irreducible(const FpPoly& h, long p) {
    size_t f = h.size() - 1;
    FpPoly y{0, 1};
    FpPoly yq = fp_powmod(y, pow_mpz(p, static_cast<int>(f)), h, p);
    FpPoly diff = yq;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    fp_trim(diff);
    if (!diff.empty()) return false; // y^(p^f) != y
    for (long q : prime_factors(static_cast<long>(f))) {
        FpPoly ye = fp_powmod(y, pow_mpz(p, static_cast<int>(f / q)), h, p);
        FpPoly d = ye;
        d.resize(std::max<size_t>(d.size(), 2), 0);
        d[1] = ((d[1] - 1) % p + p) % p;
        fp_trim(d);
        FpPoly g = fp_gcd(h, d, p);
        if (g.size() != 1) return false;
    }
    return true;
}

// extended euclid in F_p[y]: returns s with s*a = 1 mod h
FpPoly fp_invmod(const FpPoly& a, const FpPoly& h, long p) {
    FpPoly r0 = h, r1 = a, s0 = {}, s1 = {1};
    fp_trim(r1);
    while (!r1.empty()) {
        // divide r0 by r1
        FpPoly q;
        FpPoly r = r0;
        long lead_inv = fp_inv(r1.back(), p);
        if (r.size() >= r1.size()) q.assign(r.size() - r1.size() + 1, 0);
        while (r.size() >= r1.size() && !r.empty()) {
            long t = fp_mul(r.back(), lead_inv, p);
            size_t off = r.size() - r1.size();
            q[off] = t;
            for (size_t j = 0; j < r1.size(); ++j)
                r[off + j] = ((r[off + j] - fp_mul(t, r1[j], p)) % p + p) % p;
            fp_trim(r);
        }
        // s = s0 - q*s1
        FpPoly qs(q.size() + s1.size(), 0);
        if (!q.empty() && !s1.empty()) {
            qs.assign(q.size() + s1.size() - 1, 0);
            for (size_t i = 0; i < q.size(); ++i)
                for (size_t j = 0; j < s1.size(); ++j)
                    qs[i + j] = (qs[i + j] + fp_mul(q[i], s1[j], p)) % p;
        } else {
            qs.clear();
        }
        FpPoly s = s0;
        s.resize(std::max(s.size(), qs.size()), 0);
        for (size_t i = 0; i < qs.size(); ++i) s[i] = ((s[i] - qs[i]) % p + p) % p;
        fp_trim(s);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if (r0.size() != 1) throw std::domain_error("fp_invmod: not invertible");
    long c = fp_inv(r0[0], p);
    FpPoly out = s0;
    for (auto& x : out) x = fp_mul(x, c, p);
    return out;
}

// ---------- Z[w]/(g, p^W) helpers ----------

struct PolyRing {
    long p;
    unsigned f;
    int W;
    mpz_class pw;
    const std::vector<mpz_class>* g; // monic, size f+1; may be null when f==1

    PolyRing(long p_, unsigned f_, int W_, const std::vector<mpz_class>* g_)
        : p(p_), f(f_), W(W_), pw(pow_mpz(p_, W_)), g(g_) {}

    void red(std::vector<mpz_class>& a) const {
        if (f > 1 && a.size() > f) {
            for (size_t i = a.size(); i-- > f;) {
                mpz_class t = a[i] % pw;
                a[i] = 0;
                if (t == 0) continue;
                for (size_t j = 0; j < f; ++j) a[i - f + j] -= t * (*g)[j];
            }
        }
        a.resize(f, 0);
        for (auto& c : a) {
            c %= pw;
            if (c < 0) c += pw;
        }
    }

    std::vector<mpz_class> mul(const std::vector<mpz_class>& a,
                               const std::vector<mpz_class>& b) const {
        std::vector<mpz_class> c(2 * f - 1, 0);
        for (size_t i = 0; i < f; ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < f; ++j) {
                if (b[j] == 0) continue;
                c[i + j] += a[i] * b[j];
            }
        }
        red(c);
        return c;
    }

    std::vector<mpz_class> add(std::vector<mpz_class> a,
                               const std::vector<mpz_class>& b) const {
        for (size_t i = 0; i < f; ++i) a[i] += b[i];
        red(a);
        return a;
    }

    std::vector<mpz_class> pow(std::vector<mpz_class> a, mpz_class e) const {
        std::vector<mpz_class> r(f, 0);
        r[0] = 1;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    // w -> t substitution (Horner)
    std::vector<mpz_class> subst(const std::vector<mpz_class>& a,
                                 const std::vector<mpz_class>& t) const {
        std::vector<mpz_class> r(f, 0);
        for (size_t i = f; i-- > 0;) {
            r = mul(r, t);
            r[0] += a[i];
        }
        red(r);
        return r;
    }

    // evaluate an integer polynomial (coeffs) at t
    std::vector<mpz_class> eval_poly(const std::vector<mpz_class>& coeffs,
                                     const std::vector<mpz_class>& t) const {
        std::vector<mpz_class> r(f, 0);
        for (size_t i = coeffs.size(); i-- > 0;) {
            r = mul(r, t);
            r[0] += coeffs[i];
            red(r);
        }
        return r;
    }

    bool is_unit(const std::vector<mpz_class>& a) const {
        for (const auto& c : a)
            if (c % p != 0) return true;
        return false;
    }

    std::vector<mpz_class> inv(const std::vector<mpz_class>& a) const {
        if (!is_unit(a)) throw std::domain_error("PolyRing::inv of non-unit");
        std::vector<mpz_class> x(f, 0);
        if (f == 1) {
            mpz_class r;
            if (mpz_invert(r.get_mpz_t(), a[0].get_mpz_t(), pw.get_mpz_t()) == 0)
                throw std::domain_error("inv failed");
            x[0] = r;
            return x;
        }
        // residue-field inverse, then Newton lifting
        FpPoly abar(f), hbar(f + 1);
        for (size_t i = 0; i < f; ++i)
            abar[i] = mpz_class(a[i] % p).get_si();
        for (size_t i = 0; i <= f; ++i)
            hbar[i] = mpz_class((*g)[i] % p).get_si();
        fp_trim(abar);
        FpPoly i0 = fp_invmod(abar, hbar, p);
        for (size_t i = 0; i < i0.size(); ++i) x[i] = i0[i];
        int k = 1;
        while (k < W) {
            // x <- x(2 - a x)
            auto ax = mul(a, x);
            std::vector<mpz_class> two(f, 0);
            two[0] = 2;
            for (size_t i = 0; i < f; ++i) two[i] -= ax[i];
            red(two);
            x = mul(x, two);
            k *= 2;
        }
        return x;
    }
};

long ord_mod(long a, long m) {
    if (m <= 2) return 1;
    long x = a % m, o = 1;
    if (x < 0) x += m;
    while (x != 1) {
        x = static_cast<long>((static_cast<__int128>(x) * (a % m)) % m);
        ++o;
        if (o > m) throw std::logic_error("ord_mod: not coprime");
    }
    return o;
}

} // namespace

// ---------- UnramifiedField ----------

UnramifiedField::UnramifiedField(long p, unsigned m, int prec)
    : p_(p), m_(m), prec_(prec) {
    if (p < 3) throw std::invalid_argument("UnramifiedField: p must be an odd prime");
    if (m == 0) m_ = m = 1;
    if (m % p == 0 && m > 1)
        throw std::invalid_argument("UnramifiedField: p | m is ramified, unsupported");
    f_ = static_cast<unsigned>(m <= 2 ? 1 : ord_mod(p % m, m));

    // residue field F_{p^f} on the first irreducible polynomial in the
    // deterministic enumeration
    FpPoly h;
    if (f_ == 1) {
        h = {0, 1}; // y
    } else {
        bool found = false;
        for (mpz_class n = 0; !found; ++n) {
            FpPoly cand(f_ + 1, 0);
            cand[f_] = 1;
            mpz_class t = n;
            for (unsigned i = 0; i < f_; ++i) {
                cand[i] = mpz_class(t % p).get_si();
                t /= p;
            }
            if (fp_irreducible(cand, p)) {
                h = cand;
                found = true;
            }
        }
    }

    // first element of exact order m in the enumeration
    mpz_class q = pow_mpz(p, static_cast<int>(f_));
    mpz_class cof = (q - 1) / m;
    FpPoly zbar;
    for (mpz_class n = 1;; ++n) {
        FpPoly cand;
        mpz_class t = n;
        for (unsigned i = 0; i < f_; ++i) {
            cand.push_back(mpz_class(t % p).get_si());
            t /= p;
        }
        fp_trim(cand);
        if (cand.empty()) continue;
        FpPoly b = fp_powmod(cand, cof, h, p);
        if (b.empty()) continue;
        bool exact = !(b.size() == 1 && b[0] == 1 && m > 1);
        if (m == 1) exact = (b.size() == 1 && b[0] == 1);
        for (long r : prime_factors(static_cast<long>(m)))
            if (exact) {
                FpPoly c = fp_powmod(b, mpz_class(m / r), h, p);
                if (c.size() == 1 && c[0] == 1) exact = false;
            }
        if (exact) {
            zbar = b;
            break;
        }
    }

    // minimal polynomial of zbar over F_p, then its minimal lift
    std::vector<FpPoly> roots(f_);
    roots[0] = zbar;
    for (unsigned i = 1; i < f_; ++i)
        roots[i] = fp_powmod(roots[i - 1], p, h, p);
    // product of (Y - root_i), coefficients in F_{p^f}
    std::vector<FpPoly> mp(1, FpPoly{1});
    for (unsigned i = 0; i < f_; ++i) {
        std::vector<FpPoly> next(mp.size() + 1, FpPoly{});
        for (size_t d = 0; d < mp.size(); ++d) {
            // Y * mp[d]
            next[d + 1] = fp_mulmod(mp[d], FpPoly{1}, h, p);
            // - root * mp[d]
            FpPoly t = fp_mulmod(mp[d], roots[i], h, p);
            FpPoly& acc = next[d];
            acc.resize(std::max(acc.size(), t.size()), 0);
            for (size_t j = 0; j < t.size(); ++j)
                acc[j] = ((acc[j] - t[j]) % p + p) % p;
            fp_trim(acc);
        }
        mp = std::move(next);
    }
    g_.assign(f_ + 1, 0);
    for (size_t d = 0; d < mp.size(); ++d) {
        if (mp[d].size() > 1)
            throw std::logic_error("UnramifiedField: minimal polynomial not rational");
        g_[d] = mp[d].empty() ? 0 : mp[d][0];
    }
    if (g_[f_] != 1) throw std::logic_error("UnramifiedField: minpoly not monic");

    // Frobenius image of w: Newton on g starting from w^p
    PolyRing R(p, f_, prec_, &g_);
    std::vector<mpz_class> w(f_, 0);
    if (f_ == 1) {
        // w is the residue root itself: g = Y - g0r; the "generator" is g0-lift
        frob_w_ = {(pow_mpz(p, prec_) - g_[0]) % pow_mpz(p, prec_)};
        // i.e. the unique root of Y + g0
    } else {
        w[1] = 1;
        auto t = R.pow(w, p);
        std::vector<mpz_class> gder(f_);
        for (unsigned i = 1; i <= f_; ++i) gder[i - 1] = mpz_class(i) * g_[i];
        for (int it = 0; it < 64; ++it) {
            auto gt = R.eval_poly(g_, t);
            bool zero = true;
            for (auto& c : gt)
                if (c != 0) zero = false;
            if (zero) break;
            auto gdt = R.eval_poly(gder, t);
            auto corr = R.mul(gt, R.inv(gdt));
            for (unsigned i = 0; i < f_; ++i) t[i] -= corr[i];
            R.red(t);
        }
        frob_w_ = t;
    }

    // zeta_m = Teichmueller lift of w-bar
    std::vector<mpz_class> x(f_, 0);
    if (f_ == 1)
        x[0] = (pow_mpz(p, prec_) - g_[0]) % pow_mpz(p, prec_);
    else
        x[1] = 1;
    mpz_class pf = pow_mpz(p, static_cast<int>(f_));
    for (int it = 0; it < prec_ + 2; ++it) {
        auto nx = R.pow(x, pf);
        if (nx == x) break;
        x = nx;
    }
    zeta_ = x;
}

std::shared_ptr<const UnramifiedField> UnramifiedField::make(long p, unsigned m, int prec) {
    return std::make_shared<const UnramifiedField>(p, m, prec);
}

// ---------- PadicElem ----------

namespace {

PadicElem make_raw(long p, FieldPtr K, long vbase, std::vector<mpz_class> P, int abs) {
    unsigned f = K ? K->f() : 1;
    long relc = abs - vbase;
    if (relc <= 0) return PadicElem::zero(p, abs, K);
    PolyRing R(p, f, static_cast<int>(relc), K ? &K->defining_poly() : nullptr);
    R.red(P);
    long w = relc;
    for (const auto& c : P) w = std::min(w, val_of_mpz(c, p, relc));
    if (w >= relc) return PadicElem::zero(p, abs, K);
    if (w > 0) {
        mpz_class pw = pow_mpz(p, static_cast<int>(w));
        for (auto& c : P) c /= pw;
    }
    return PadicElem::from_mantissa(p, vbase + w, std::move(P), abs, K);
}

} // namespace

PadicElem PadicElem::zero(long p, int abs, FieldPtr K) {
    PadicElem e;
    e.p_ = p;
    e.K_ = std::move(K);
    e.zero_ = true;
    e.abs_ = abs;
    return e;
}

PadicElem PadicElem::from_mantissa(long p, long v, std::vector<mpz_class> unit, int abs,
                                   FieldPtr K) {
    PadicElem e;
    e.p_ = p;
    e.K_ = std::move(K);
    e.zero_ = false;
    e.v_ = v;
    e.abs_ = abs;
    e.u_ = std::move(unit);
    unsigned f = e.K_ ? e.K_->f() : 1;
    e.u_.resize(f, 0);
    return e;
}

PadicElem PadicElem::from_int(long p, const mpz_class& n, int abs, FieldPtr K) {
    unsigned f = K ? K->f() : 1;
    std::vector<mpz_class> P(f, 0);
    P[0] = n;
    return make_raw(p, std::move(K), 0, std::move(P), abs);
}

PadicElem PadicElem::from_rational(long p, const mpz_class& num, const mpz_class& den,
                                   int abs, FieldPtr K) {
    if (den == 0) throw std::invalid_argument("from_rational: zero denominator");
    if (num == 0) return zero(p, abs, std::move(K));
    long vn = val_of_mpz(num, p, 1 << 20), vd = val_of_mpz(den, p, 1 << 20);
    mpz_class nu = num / pow_mpz(p, static_cast<int>(vn));
    mpz_class de = den / pow_mpz(p, static_cast<int>(vd));
    long v = vn - vd;
    int relc = abs - static_cast<int>(v);
    if (relc <= 0) return zero(p, abs, std::move(K));
    mpz_class pw = pow_mpz(p, relc), inv;
    if (mpz_invert(inv.get_mpz_t(), de.get_mpz_t(), pw.get_mpz_t()) == 0)
        throw std::domain_error("from_rational: denominator not a p-unit");
    unsigned f = K ? K->f() : 1;
    std::vector<mpz_class> P(f, 0);
    P[0] = ((nu % pw) * inv) % pw;
    if (P[0] < 0) P[0] += pw;
    return from_mantissa(p, v, std::move(P), abs, std::move(K));
}

PadicElem PadicElem::one(long p, int abs, FieldPtr K) {
    return from_int(p, 1, abs, std::move(K));
}

PadicElem PadicElem::gen(const FieldPtr& K, int abs) {
    if (!K || K->f() < 2) throw std::invalid_argument("gen: needs an extension field");
    std::vector<mpz_class> P(K->f(), 0);
    P[1] = 1;
    return from_mantissa(K->p(), 0, std::move(P), abs, K);
}

PadicElem PadicElem::zeta(const FieldPtr& K, int abs) {
    if (!K) throw std::invalid_argument("zeta: null field");
    if (abs > K->prec()) throw std::invalid_argument("zeta: beyond field precision");
    auto P = K->zeta_coeffs();
    return make_raw(K->p(), K, 0, std::move(P), abs);
}

long PadicElem::val() const { return zero_ ? abs_ : v_; }

void PadicElem::check_compatible(const PadicElem& a, const PadicElem& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("mixed primes");
    const UnramifiedField* ka = a.K_.get();
    const UnramifiedField* kb = b.K_.get();
    if (ka == kb) return;
    // Q_p embeds in any extension; same (p, m) presentations are identical
    if (!ka || !kb) return;
    if (ka->m() == kb->m() && ka->f() == kb->f()) return;
    throw std::invalid_argument("mixed coefficient fields");
}

PadicElem PadicElem::operator-() const {
    if (zero_) return *this;
    PadicElem r = *this;
    mpz_class pw = pow_mpz(p_, rel());
    for (auto& c : r.u_) {
        c = (pw - c) % pw;
    }
    return r;
}

PadicElem PadicElem::operator+(const PadicElem& o) const {
    check_compatible(*this, o);
    int M = std::min(abs_, o.abs_);
    if (zero_ && o.zero_) return zero(p_, M, K_ ? K_ : o.K_);
    if (zero_) return o.reduce_prec(M);
    if (o.zero_) return reduce_prec(M);
    long vb = std::min(v_, o.v_);
    FieldPtr K = K_ ? K_ : o.K_;
    unsigned f = K ? K->f() : 1;
    std::vector<mpz_class> P(f, 0), ua = u_, ub = o.u_;
    ua.resize(f, 0);
    ub.resize(f, 0);
    mpz_class sa = pow_mpz(p_, static_cast<int>(v_ - vb));
    mpz_class sb = pow_mpz(p_, static_cast<int>(o.v_ - vb));
    for (unsigned i = 0; i < f; ++i) P[i] = ua[i] * sa + ub[i] * sb;
    return make_raw(p_, K, vb, std::move(P), M);
}

PadicElem PadicElem::operator-(const PadicElem& o) const { return *this + (-o); }

PadicElem PadicElem::operator*(const PadicElem& o) const {
    check_compatible(*this, o);
    FieldPtr K = K_ ? K_ : o.K_;
    if (zero_ || o.zero_) {
        long va = zero_ ? abs_ : v_;
        long vb = o.zero_ ? o.abs_ : o.v_;
        long M = std::min<long>(va + o.abs_, vb + static_cast<long>(abs_));
        M = std::min<long>(M, kInfPrec);
        if (is_exact_zero() || o.is_exact_zero()) return zero(p_, kInfPrec, K);
        return zero(p_, static_cast<int>(M), K);
    }
    int relr = std::min(rel(), o.rel());
    unsigned f = K ? K->f() : 1;
    PolyRing R(p_, f, relr, K ? &K->defining_poly() : nullptr);
    std::vector<mpz_class> a = u_, b = o.u_;
    a.resize(f, 0);
    b.resize(f, 0);
    R.red(a);
    R.red(b);
    auto c = R.mul(a, b);
    return from_mantissa(p_, v_ + o.v_, std::move(c), static_cast<int>(v_ + o.v_) + relr, K);
}

PadicElem PadicElem::inv() const {
    if (zero_) throw std::domain_error("division by zero (to working precision)");
    unsigned f = K_ ? K_->f() : 1;
    PolyRing R(p_, f, rel(), K_ ? &K_->defining_poly() : nullptr);
    auto c = R.inv(u_);
    return from_mantissa(p_, -v_, std::move(c), static_cast<int>(-v_) + rel(), K_);
}

PadicElem PadicElem::operator/(const PadicElem& o) const { return *this * o.inv(); }

PadicElem PadicElem::shift(long k) const {
    PadicElem r = *this;
    if (zero_) {
        if (!r.is_exact_zero()) r.abs_ = static_cast<int>(r.abs_ + k);
        return r;
    }
    r.v_ += k;
    r.abs_ = static_cast<int>(r.abs_ + k);
    return r;
}

PadicElem PadicElem::pow_int(const mpz_class& e) const {
    if (e < 0) return inv().pow_int(-e);
    PadicElem r = one(p_, zero_ ? abs_ : rel(), K_);
    PadicElem b = *this;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

PadicElem PadicElem::reduce_prec(int abs) const {
    if (abs >= abs_) return *this;
    if (zero_) return zero(p_, abs, K_);
    std::vector<mpz_class> P = u_;
    return make_raw(p_, K_, v_, std::move(P), abs);
}

bool PadicElem::equal_mod(const PadicElem& o, int M) const {
    if (abs_ < M || o.abs_ < M)
        throw std::invalid_argument("equal_mod: operands not known to requested precision");
    PadicElem d = *this - o;
    return d.is_zero() ? d.abs_ >= M : d.v_ >= M;
}

PadicElem PadicElem::frobenius() const {
    if (!K_ || K_->f() == 1) return *this;
    if (zero_) return *this;
    if (rel() > K_->prec()) throw std::invalid_argument("frobenius: beyond field precision");
    PolyRing R(p_, K_->f(), rel(), &K_->defining_poly());
    auto fw = K_->frobenius_of_w();
    auto c = R.subst(u_, fw);
    return make_raw(p_, K_, v_, std::move(c), abs_);
}

bool PadicElem::is_in_qp() const {
    if (zero_ || !K_) return true;
    for (size_t i = 1; i < u_.size(); ++i)
        if (u_[i] != 0) return false;
    return true;
}

PadicElem PadicElem::to_qp() const {
    if (!K_) return *this;
    if (zero_) return zero(p_, abs_);
    if (!is_in_qp()) throw std::domain_error("to_qp: element not in Q_p");
    return from_mantissa(p_, v_, {u_[0]}, abs_, nullptr);
}

PadicElem PadicElem::teichmuller() const {
    if (zero_ || v_ != 0) throw std::domain_error("teichmuller: input must be a unit");
    unsigned f = K_ ? K_->f() : 1;
    PolyRing R(p_, f, rel(), K_ ? &K_->defining_poly() : nullptr);
    std::vector<mpz_class> x = u_;
    mpz_class pf = pow_mpz(p_, static_cast<int>(f));
    for (int it = 0; it < rel() + 2; ++it) {
        auto nx = R.pow(x, pf);
        if (nx == x) break;
        x = std::move(nx);
    }
    return from_mantissa(p_, 0, std::move(x), abs_, K_);
}

std::pair<PadicElem, PadicElem> PadicElem::omega_angle_split() const {
    PadicElem w = teichmuller();
    PadicElem ang = *this * w.inv();
    return {w, ang};
}

PadicElem PadicElem::log() const {
    if (zero_ || v_ != 0) throw std::domain_error("log: input must be a unit");
    PadicElem u = *this;
    // Iwasawa branch: kill the Teichmueller part
    PadicElem z = u * u.teichmuller().inv() - one(p_, abs_, K_);
    int T = abs_;
    if (z.is_zero()) return zero(p_, T, K_);
    long w = z.val();
    PadicElem acc = zero(p_, T, K_);
    PadicElem zp = z; // z^n
    long nmax = (T + 3) / w + 9;
    for (long n = 1; n <= nmax; ++n) {
        if (n > 1) zp = zp * z;
        PadicElem term = zp;
        // divide by n (exact scalar division)
        long vn = val_of_mpz(mpz_class(n), p_, 64);
        mpz_class nunit = mpz_class(n) / pow_mpz(p_, static_cast<int>(vn));
        term = term * from_rational(p_, 1, nunit, term.rel() + 1, K_);
        term = term.shift(-vn);
        if (n % 2 == 0) term = -term;
        acc = acc + term;
    }
    return acc.reduce_prec(T);
}

PadicElem PadicElem::exp() const {
    int T = abs_;
    if (zero_) return one(p_, T, K_);
    if (v_ < 1) throw std::domain_error("exp: requires valuation >= 1");
    PadicElem acc = one(p_, T, K_);
    PadicElem term = one(p_, T + 2, K_);
    long nmax = 2L * (T + 3) + 9;
    for (long n = 1; n <= nmax; ++n) {
        term = term * (*this);
        long vn = val_of_mpz(mpz_class(n), p_, 64);
        mpz_class nunit = mpz_class(n) / pow_mpz(p_, static_cast<int>(vn));
        term = term * from_rational(p_, 1, nunit, term.rel() + 1, K_);
        term = term.shift(-vn);
        if (term.is_zero() && term.prec() >= T) break;
        acc = acc + term;
        if (!term.is_zero() && term.val() >= T + 1 && n > 2 * T) break;
    }
    return acc.reduce_prec(T);
}

PadicElem PadicElem::pow_principal(const PadicElem& s) const {
    if (zero_) throw std::domain_error("pow_principal: zero base");
    if (v_ != 0) throw std::domain_error("pow_principal: base must be a unit = 1 mod p");
    PadicElem l = log();
    return (s * l).exp();
}

std::string PadicElem::to_string() const {
    std::ostringstream os;
    if (is_exact_zero()) return "0";
    if (zero_) {
        os << "O(" << p_ << "^" << abs_ << ")";
        return os.str();
    }
    unsigned f = K_ ? K_->f() : 1;
    os << p_ << "^" << v_ << " * (";
    // digits base p, low to high; extension digits are polys in w
    std::vector<mpz_class> c = u_;
    for (int k = 0; k < rel(); ++k) {
        if (k) os << " + ";
        std::vector<long> dig(f);
        for (unsigned i = 0; i < f; ++i) {
            mpz_class d = c[i] % p_;
            dig[i] = d.get_si();
            c[i] /= p_;
        }
        if (f == 1) {
            os << dig[0];
        } else {
            os << "(";
            for (unsigned i = 0; i < f; ++i) {
                if (i) os << " + ";
                os << dig[i];
                if (i == 1) os << "*w";
                if (i > 1) os << "*w^" << i;
            }
            os << ")";
        }
        if (k == 1) os << "*" << p_;
        if (k > 1) os << "*" << p_ << "^" << k;
    }
    os << ") + O(" << p_ << "^" << abs_ << ")";
    return os.str();
}

PadicElem PadicElem::parse(long p, const std::string& s, FieldPtr K) {
    if (K && K->f() > 1)
        throw std::invalid_argument("parse: extension elements not supported");
    auto fail = []() -> PadicElem {
        throw std::invalid_argument("PadicElem::parse: malformed input");
    };
    std::string t;
    for (char ch : s)
        if (!isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t == "0") return zero(p, kInfPrec, K);
    if (t.rfind("O(", 0) == 0) {
        size_t car = t.find('^');
        if (car == std::string::npos) return fail();
        int M = std::stoi(t.substr(car + 1, t.size() - car - 2));
        return zero(p, M, K);
    }
    size_t car = t.find('^');
    size_t star = t.find('*');
    if (car == std::string::npos || star == std::string::npos) return fail();
    long v = std::stol(t.substr(car + 1, star - car - 1));
    size_t lp = t.find('(');
    size_t rp = t.rfind(")+O(");
    if (lp == std::string::npos || rp == std::string::npos) return fail();
    std::string body = t.substr(lp + 1, rp - lp - 1);
    size_t ocar = t.rfind('^');
    int M = std::stoi(t.substr(ocar + 1, t.size() - ocar - 2));
    // digits separated by '+', each "d" or "d*p^k"
    mpz_class mant = 0, pk = 1;
    size_t pos = 0;
    while (pos < body.size()) {
        size_t plus = body.find('+', pos);
        std::string piece = body.substr(pos, plus == std::string::npos ? std::string::npos
                                                                       : plus - pos);
        size_t st = piece.find('*');
        mpz_class d(piece.substr(0, st));
        mant += d * pk;
        pk *= p;
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    return make_raw(p, K, v, {mant}, M);
}

} // namespace padiclab
