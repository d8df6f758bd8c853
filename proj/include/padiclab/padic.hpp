#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace padiclab {

// Unramified extension Q_{p^f} = Q_p(w), presented as Z_p[w]/(g) where g is a
// monic degree-f lift of an irreducible factor of the cyclotomic polynomial
// Phi_m over F_p.  The construction is deterministic in (p, m) so cached
// values stay comparable across runs: the residue field is built on the
// lexicographically first irreducible polynomial, and zeta_m is the
// Teichmueller lift of the first element of exact order m found in the
// deterministic element enumeration.
//
// f = 1 is allowed (zeta_m already lives in Z_p); plain Q_p elements carry a
// null field pointer instead.
class UnramifiedField {
public:
    UnramifiedField(long p, unsigned m, int prec);

    long p() const { return p_; }
    unsigned m() const { return m_; }
    unsigned f() const { return f_; }
    int prec() const { return prec_; }

    // monic defining polynomial, coefficients in [0, p); size f+1
    const std::vector<mpz_class>& defining_poly() const { return g_; }
    // image of w under the Frobenius lift, as a poly of degree < f (mod p^prec)
    const std::vector<mpz_class>& frobenius_of_w() const { return frob_w_; }
    // Teichmueller representative of order m (poly of degree < f, mod p^prec)
    const std::vector<mpz_class>& zeta_coeffs() const { return zeta_; }

    static std::shared_ptr<const UnramifiedField> make(long p, unsigned m, int prec);

private:
    long p_;
    unsigned m_;
    unsigned f_;
    int prec_;
    std::vector<mpz_class> g_;
    std::vector<mpz_class> frob_w_;
    std::vector<mpz_class> zeta_;
};

using FieldPtr = std::shared_ptr<const UnramifiedField>;

// An element of Q_p or Q_{p^f} at explicit absolute precision: x = p^v * u
// with u a unit mantissa known mod p^(abs - v).  Zero at precision M (the
// class O(p^M)) is a distinct state; exact zero has infinite precision.
//
// Arithmetic never claims more precision than the inputs justify:
//   add/sub: min of absolute precisions,
//   mul:     min(v_a + M_b, v_b + M_a).
class PadicElem {
public:
    static constexpr int kInfPrec = 1 << 28;

    PadicElem() : p_(0), zero_(true), v_(0), abs_(kInfPrec) {}

    // exact integer / rational, reduced mod p^abs
    static PadicElem from_int(long p, const mpz_class& n, int abs, FieldPtr K = nullptr);
    static PadicElem from_rational(long p, const mpz_class& num, const mpz_class& den,
                                   int abs, FieldPtr K = nullptr);
    static PadicElem from_mantissa(long p, long v, std::vector<mpz_class> unit, int abs,
                                   FieldPtr K = nullptr);
    static PadicElem zero(long p, int abs = kInfPrec, FieldPtr K = nullptr);
    static PadicElem one(long p, int abs, FieldPtr K = nullptr);
    // the generator w of the extension
    static PadicElem gen(const FieldPtr& K, int abs);
    // the chosen zeta_m of the extension
    static PadicElem zeta(const FieldPtr& K, int abs);

    long p() const { return p_; }
    const FieldPtr& field() const { return K_; }
    unsigned f() const { return K_ ? K_->f() : 1; }
    bool is_zero() const { return zero_; }             // zero at its precision
    bool is_exact_zero() const { return zero_ && abs_ >= kInfPrec; }
    long val() const;                                  // kInfPrec if zero
    int prec() const { return abs_; }                  // absolute precision
    bool is_unit() const { return !zero_ && v_ == 0; }

    // mantissa coefficients (size f), reduced mod p^(abs-v); unit part only
    const std::vector<mpz_class>& unit_coeffs() const { return u_; }

    PadicElem operator-() const;
    PadicElem operator+(const PadicElem& o) const;
    PadicElem operator-(const PadicElem& o) const;
    PadicElem operator*(const PadicElem& o) const;
    PadicElem operator/(const PadicElem& o) const;     // o must be nonzero
    PadicElem inv() const;
    PadicElem pow_int(const mpz_class& e) const;
    PadicElem shift(long k) const;                     // multiply by p^k

    PadicElem reduce_prec(int abs) const;              // truncate to O(p^abs)
    // equality as residues mod p^M (both must be known to at least M)
    bool equal_mod(const PadicElem& o, int M) const;

    PadicElem frobenius() const;
    // restriction to Q_p; error if higher coefficients are nonzero mod p^abs
    PadicElem to_qp() const;
    bool is_in_qp() const;

    // Teichmueller lift: omega(x)^(p^f - 1) = 1, omega(x) = x mod p. Unit input.
    PadicElem teichmuller() const;
    // (omega(x), <x>) with x = omega(x) <x>, <x> = 1 mod p. Unit input.
    std::pair<PadicElem, PadicElem> omega_angle_split() const;
    // Iwasawa-branch logarithm: log(u) := log(<u>) for any unit u.
    PadicElem log() const;
    // exponential; requires val >= 1
    PadicElem exp() const;
    // x^s for x = 1 mod p and s in Z_p (computed as exp(s log x))
    PadicElem pow_principal(const PadicElem& s) const;

    std::string to_string() const;                     // canonical textual form
    static PadicElem parse(long p, const std::string& s, FieldPtr K = nullptr);

private:
    long p_ = 0;
    FieldPtr K_;                 // null for Q_p
    bool zero_ = true;
    long v_ = 0;                 // valuation (nonzero elements)
    int abs_ = kInfPrec;         // absolute precision
    std::vector<mpz_class> u_;   // unit mantissa, poly of degree < f

    int rel() const { return abs_ - static_cast<int>(v_); }
    void normalize();
    static void check_compatible(const PadicElem& a, const PadicElem& b);
};

// helpers shared with other modules
mpz_class pow_mpz(long p, int e);
long val_of_mpz(const mpz_class& n, long p, long cap);

} // namespace padiclab
