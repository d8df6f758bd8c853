#pragma once

#include <optional>
#include <string>

#include "padiclab/padic.hpp"

namespace padiclab {

// An evaluation point sigma of weight space: a continuous character of Z_p^*,
//   sigma(z) = omega(z)^t * <z>^s * xi(z),
// with s in Z_p (exact integer or a p-adic element), t the tame branch index
// mod p-1, and xi a "wild" twist of p-power conductor.
//
// Only wild twists of conductor dividing p are representable here: their
// values have order dividing p-1 and embed into Z_p via the Teichmueller
// character as xi = omega^wild_exp.  A twist of conductor p^2 or more takes
// values in the ramified extension Q_p(zeta_p), which this number system
// excludes by design; constructors reject such input.
class EvalCharacter {
public:
    EvalCharacter(long p, mpz_class s_int, long t, long wild_exp = 0);
    EvalCharacter(long p, PadicElem s, long t, long wild_exp = 0);

    static EvalCharacter integer_point(long p, long j); // sigma = z^j

    long p() const { return p_; }
    long t() const { return t_; }
    long wild_exp() const { return wild_; }
    long t_effective() const { return (t_ + wild_) % (p_ - 1); }
    bool s_is_integer() const { return s_int_.has_value(); }
    const std::optional<mpz_class>& s_integer() const { return s_int_; }

    int sign() const; // sigma(-1)

    PadicElem s_at(int prec) const;
    // v_p(s - k) for integer k, capped at the precision of s
    long s_minus_val(long k) const;

    // sigma(a) for p not dividing a
    PadicElem eval(long a, int prec) const;
    // the value sigma(u) for a principal unit u (the omega/xi parts vanish)
    PadicElem eval_principal(const PadicElem& u) const;

    // s-component decreased by k, tame index decreased by k mod (p-1)
    EvalCharacter shifted(long k) const;

    std::string describe() const;
    bool operator<(const EvalCharacter& o) const; // for cache keys / sorting

private:
    long p_;
    std::optional<mpz_class> s_int_;
    std::optional<PadicElem> s_pad_;
    long t_;
    long wild_;
};

} // namespace padiclab
