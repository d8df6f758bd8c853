#pragma once

#include <gmpxx.h>

#include <vector>

#include "padiclab/padic.hpp"

namespace padiclab {

unsigned long euler_phi(unsigned long n);
// n-th cyclotomic polynomial over Z, low-to-high coefficients
const std::vector<mpz_class>& cyclotomic_poly(unsigned long n);

// Exact element of Q(zeta_e) in the power basis 1, zeta, ..., zeta^(phi(e)-1).
// All arithmetic is rational; the p-adic embedding is applied at the end of a
// computation, never in the middle.
class CycloRational {
public:
    explicit CycloRational(unsigned e = 1) : e_(e), c_(euler_phi(e), 0) {}
    static CycloRational from_rational(const mpq_class& q, unsigned e = 1);
    static CycloRational zeta_power(unsigned e, long k);

    unsigned order() const { return e_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    mpq_class rational() const; // throws if not rational

    CycloRational promoted(unsigned E) const; // e | E
    CycloRational operator+(const CycloRational& o) const;
    CycloRational operator-(const CycloRational& o) const;
    CycloRational operator-() const;
    CycloRational operator*(const CycloRational& o) const;
    CycloRational scaled(const mpq_class& q) const;
    // zeta -> zeta^k for gcd(k, e) = 1 (Galois action; k = -1 is conjugation)
    CycloRational galois(long k) const;
    bool operator==(const CycloRational& o) const;

    // embedding via the field's chosen zeta_m (requires e | K->m())
    PadicElem embed(long p, const FieldPtr& K, int prec) const;

    std::string to_string() const;

private:
    unsigned e_;
    std::vector<mpq_class> c_;
    static CycloRational reduce(unsigned e, std::vector<mpq_class> big);
};

} // namespace padiclab
