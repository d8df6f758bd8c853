#include "padiclab/characters.hpp"

#include <numeric>
#include <stdexcept>

namespace padiclab {

namespace {

long mod_pow(long b, long e, long m) {
    long r = 1 % m;
    b %= m;
    if (b < 0) b += m;
    while (e > 0) {
        if (e & 1) r = static_cast<long>((static_cast<__int128>(r) * b) % m);
        b = static_cast<long>((static_cast<__int128>(b) * b) % m);
        e >>= 1;
    }
    return r;
}

long mult_order(long a, long m) {
    long x = a % m, o = 1;
    if (x < 0) x += m;
    while (x != 1) {
        x = static_cast<long>((static_cast<__int128>(x) * a) % m);
        ++o;
    }
    return o;
}

// smallest primitive root mod q^a (q odd prime)
long primitive_root(long qa, long phi) {
    for (long g = 2; g < qa; ++g) {
        if (std::gcd(g, qa) != 1) continue;
        if (mult_order(g, qa) == phi) return g;
    }
    throw std::logic_error("primitive_root: none found");
}

long dlog(long g, long x, long m, long ord) {
    long t = 1 % m;
    x %= m;
    if (x < 0) x += m;
    for (long k = 0; k < ord; ++k) {
        if (t == x) return k;
        t = static_cast<long>((static_cast<__int128>(t) * g) % m);
    }
    throw std::logic_error("dlog: not in cyclic subgroup");
}

} // namespace

DirichletCharacter DirichletCharacter::from_conrey(unsigned long modulus, unsigned long index) {
    if (modulus == 0) throw std::invalid_argument("modulus must be positive");
    if (modulus == 1) index = 1;
    index %= std::max<unsigned long>(modulus, 1);
    if (index == 0 && modulus == 1) index = 1;
    if (modulus > 1 && std::gcd(index, modulus) != 1)
        throw std::invalid_argument("Conrey index must be coprime to the modulus");

    DirichletCharacter chi;
    chi.m_ = modulus;
    chi.exps_.assign(modulus, -1);

    if (modulus == 1) {
        chi.exps_ = {0};
        chi.e_ = 1;
        chi.finalize();
        chi.conrey_ = 1;
        return chi;
    }

    // prime-power components of the Conrey pairing
    struct Comp {
        long qa, q, a;
        long kind; // 0: odd or q^a in {2,4}; 1: 2^a with a >= 3
        long g, phi;
    };
    std::vector<Comp> comps;
    unsigned long rest = modulus;
    for (long q = 2; rest > 1; ++q) {
        if (rest % static_cast<unsigned long>(q) != 0) continue;
        long qa = 1, a = 0;
        while (rest % static_cast<unsigned long>(q) == 0) {
            rest /= static_cast<unsigned long>(q);
            qa *= q;
            ++a;
        }
        Comp c;
        c.qa = qa;
        c.q = q;
        c.a = a;
        c.phi = static_cast<long>(euler_phi(static_cast<unsigned long>(qa)));
        if (q == 2) {
            c.kind = (a >= 3) ? 1 : 0;
            c.g = (qa == 4) ? 3 : 1;
        } else {
            c.kind = 0;
            c.g = primitive_root(qa, c.phi);
        }
        comps.push_back(c);
    }

    // pairing denominator D and numerators k(n, x) per component
    long D = 1;
    for (const auto& c : comps) {
        if (c.qa == 2) continue;
        if (c.kind == 0)
            D = std::lcm(D, c.phi);
        else
            D = std::lcm(D, std::lcm(2L, c.qa / 4));
    }

    auto pair_exponent = [&](long n, long x) -> long {
        // exponent of e(1/D)
        long total = 0;
        for (const auto& c : comps) {
            if (c.qa == 2) continue;
            long nn = n % c.qa, xx = x % c.qa;
            if (nn < 0) nn += c.qa;
            if (xx < 0) xx += c.qa;
            if (c.kind == 0) {
                long bn = dlog(c.g, nn, c.qa, c.phi);
                long bx = dlog(c.g, xx, c.qa, c.phi);
                long k = static_cast<long>(
                    (static_cast<__int128>(bn) * bx % c.phi) * (D / c.phi) % D);
                total = (total + k) % D;
            } else {
                // n = (-1)^eps 5^b mod 2^a
                long half = c.qa / 4; // order of 5
                auto decomp = [&](long y) {
                    for (long eps = 0; eps < 2; ++eps) {
                        long target = eps ? (c.qa - y) % c.qa : y;
                        long t = 1;
                        for (long b = 0; b < half; ++b) {
                            if (t == target) return std::pair<long, long>(eps, b);
                            t = static_cast<long>((static_cast<__int128>(t) * 5) % c.qa);
                        }
                    }
                    throw std::logic_error("2-adic Conrey decomposition failed");
                };
                auto [en, bn] = decomp(nn);
                auto [ex, bx] = decomp(xx);
                long k1 = (en * ex) % 2 * (D / 2);
                long k2 = static_cast<long>(
                    (static_cast<__int128>(bn) * bx % half) * (D / half) % D);
                total = (total + k1 + k2) % D;
            }
        }
        return total;
    };

    // raw exponents over denominator D, then reduce to the exact order
    std::vector<long> raw(modulus, -1);
    long g = D;
    for (unsigned long x = 0; x < modulus; ++x) {
        if (std::gcd(x, modulus) != 1) continue;
        raw[x] = pair_exponent(static_cast<long>(index), static_cast<long>(x));
        g = std::gcd(g, raw[x]);
    }
    if (g == 0) g = D;
    chi.e_ = static_cast<unsigned long>(D / g);
    for (unsigned long x = 0; x < modulus; ++x)
        chi.exps_[x] = raw[x] < 0 ? -1 : raw[x] / g;
    chi.conrey_ = index;
    chi.finalize();
    return chi;
}

void DirichletCharacter::finalize() {
    // exact order
    long g = static_cast<long>(e_);
    for (long v : exps_)
        if (v > 0) g = std::gcd(g, v);
    if (g > 1 && e_ > 1) {
        e_ /= g;
        for (auto& v : exps_)
            if (v > 0) v /= g;
    }
    if (e_ == 0) e_ = 1;

    // conductor: minimal d | m with chi trivial on units = 1 mod d
    cond_ = m_;
    for (unsigned long d = 1; d <= m_; ++d) {
        if (m_ % d != 0) continue;
        bool ok = true;
        for (unsigned long a = 1; a < m_ && ok; ++a) {
            if (std::gcd(a, m_) != 1) continue;
            if (a % d == 1 % d && exps_[a] != 0) ok = false;
        }
        if (ok) {
            cond_ = d;
            break;
        }
    }
    if (m_ == 1) cond_ = 1;
}

unsigned long DirichletCharacter::find_conrey_() const {
    if (m_ == 1) return 1;
    for (unsigned long n = 1; n < m_; ++n) {
        if (std::gcd(n, m_) != 1) continue;
        if (from_conrey(m_, n) == *this) return n;
    }
    throw std::logic_error("find_conrey_: no matching Conrey index");
}

int DirichletCharacter::parity() const {
    if (m_ <= 2) return 1;
    long ex = exps_[m_ - 1];
    // chi(-1) = +-1; exponent is 0 or e/2
    return (ex == 0) ? 1 : -1;
}

std::optional<long> DirichletCharacter::exponent(long n) const {
    if (m_ == 1) return 0;
    long r = n % static_cast<long>(m_);
    if (r < 0) r += m_;
    if (exps_[r] < 0) return std::nullopt;
    return exps_[r];
}

bool DirichletCharacter::is_one_at(long n) const {
    auto e = exponent(n);
    return e && *e == 0;
}

CycloRational DirichletCharacter::value(long n) const {
    auto ex = exponent(n);
    if (!ex) return CycloRational(static_cast<unsigned>(e_));
    return CycloRational::zeta_power(static_cast<unsigned>(e_), *ex);
}

PadicElem DirichletCharacter::value_padic(long n, long p, const FieldPtr& K, int prec) const {
    auto ex = exponent(n);
    if (!ex) return PadicElem::zero(p, prec, K);
    if (e_ == 1) return PadicElem::one(p, prec, K);
    if (e_ == 2) return PadicElem::from_int(p, (*ex == 0) ? 1 : -1, prec, K);
    if (!K || K->m() % e_ != 0)
        throw std::invalid_argument("value_padic: field lacks the needed root of unity");
    return PadicElem::zeta(K, prec).pow_int(mpz_class(static_cast<long>(K->m() / e_) * *ex));
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& o) const {
    unsigned long M = std::lcm(m_, o.m_);
    unsigned long E = std::lcm(e_, o.e_);
    DirichletCharacter r;
    r.m_ = M;
    r.e_ = E;
    r.exps_.assign(M, -1);
    for (unsigned long a = 0; a < M; ++a) {
        if (M > 1 && std::gcd(a, M) != 1) continue;
        auto e1 = exponent(static_cast<long>(a));
        auto e2 = o.exponent(static_cast<long>(a));
        if (!e1 || !e2) continue;
        r.exps_[a] =
            static_cast<long>((*e1 * (E / e_) + *e2 * (E / o.e_)) % E);
    }
    r.finalize();
    r.conrey_ = r.find_conrey_();
    return r.primitive_part();
}

DirichletCharacter DirichletCharacter::inverse() const {
    DirichletCharacter r = *this;
    for (auto& v : r.exps_)
        if (v > 0) v = static_cast<long>(e_) - v;
    r.finalize();
    r.conrey_ = r.find_conrey_();
    return r;
}

DirichletCharacter DirichletCharacter::primitive_part() const {
    if (cond_ == m_) return *this;
    DirichletCharacter r;
    r.m_ = cond_;
    r.e_ = e_;
    r.exps_.assign(std::max<unsigned long>(cond_, 1), -1);
    if (cond_ == 1) {
        r.exps_ = {0};
        r.e_ = 1;
        r.finalize();
        r.conrey_ = 1;
        return r;
    }
    for (unsigned long a = 0; a < cond_; ++a) {
        if (std::gcd(a, cond_) != 1) continue;
        // lift a to a residue coprime to m
        unsigned long b = a;
        while (std::gcd(b, m_) != 1) b += cond_;
        r.exps_[a] = exps_[b % m_];
    }
    r.finalize();
    r.conrey_ = r.find_conrey_();
    return r;
}

DirichletCharacter DirichletCharacter::induced_mod(unsigned long M) const {
    if (M % cond_ != 0) throw std::invalid_argument("induced_mod: conductor must divide M");
    DirichletCharacter prim = primitive_part();
    DirichletCharacter r;
    r.m_ = M;
    r.e_ = prim.e_;
    r.exps_.assign(M, -1);
    for (unsigned long a = 0; a < M; ++a) {
        if (M > 1 && std::gcd(a, M) != 1) continue;
        auto e = prim.exponent(static_cast<long>(a));
        r.exps_[a] = e ? *e : -1;
    }
    r.finalize();
    r.conrey_ = r.find_conrey_();
    return r;
}

bool DirichletCharacter::operator==(const DirichletCharacter& o) const {
    return m_ == o.m_ && e_ == o.e_ && exps_ == o.exps_;
}

unsigned long DirichletCharacter::embedding_order() const { return std::lcm(m_, e_); }

PadicElem DirichletCharacter::gauss_sum(long p, const FieldPtr& K, int prec) const {
    if (!is_primitive()) throw std::domain_error("gauss_sum: character must be primitive");
    if (m_ == 1) return PadicElem::one(p, prec, K);
    if (m_ % p == 0) throw std::domain_error("gauss_sum: p | m unsupported");
    if (!K || K->m() % std::lcm(m_, e_) != 0)
        throw std::invalid_argument("gauss_sum: field lacks zeta_lcm(m, e)");
    PadicElem zm = PadicElem::zeta(K, prec).pow_int(mpz_class(K->m() / m_));
    PadicElem acc = PadicElem::zero(p, prec, K);
    PadicElem za = PadicElem::one(p, prec, K);
    for (unsigned long a = 1; a < m_; ++a) {
        za = za * zm;
        auto ex = exponent(static_cast<long>(a));
        if (!ex) continue;
        acc = acc + value_padic(static_cast<long>(a), p, K, prec) * za;
    }
    return acc;
}

std::string DirichletCharacter::label() const {
    return std::to_string(m_) + "." + std::to_string(conrey_);
}

bool is_p_decent(const DirichletCharacter& psi, const DirichletCharacter& tau, long r, long p) {
    unsigned long N = psi.conductor() * tau.conductor();
    if (N % p == 0) throw std::invalid_argument("is_p_decent: p divides N");
    if (r > 0) return true;
    DirichletCharacter quot = psi * tau.inverse();
    unsigned long Np = N * static_cast<unsigned long>(p);
    for (long l = 2; static_cast<unsigned long>(l) <= Np; ++l) {
        if (Np % l != 0) continue;
        bool prime = true;
        for (long d = 2; d * d <= l; ++d)
            if (l % d == 0) prime = false;
        if (!prime) continue;
        if (quot.conductor() % l == 0) continue;
        if (quot.is_one_at(l)) return false;
    }
    return true;
}

} // namespace padiclab
