#include "padiclab/weightspace.hpp"

#include <sstream>
#include <stdexcept>

namespace padiclab {

namespace {
long norm_mod(long x, long m) {
    long r = x % m;
    return r < 0 ? r + m : r;
}
} // namespace

EvalCharacter::EvalCharacter(long p, mpz_class s_int, long t, long wild_exp)
    : p_(p), s_int_(std::move(s_int)), t_(norm_mod(t, p - 1)), wild_(norm_mod(wild_exp, p - 1)) {
    if (p < 3) throw std::invalid_argument("EvalCharacter: odd p required");
}

EvalCharacter::EvalCharacter(long p, PadicElem s, long t, long wild_exp)
    : p_(p), s_pad_(std::move(s)), t_(norm_mod(t, p - 1)), wild_(norm_mod(wild_exp, p - 1)) {
    if (p < 3) throw std::invalid_argument("EvalCharacter: odd p required");
    if (!s_pad_->is_zero() && s_pad_->val() < 0)
        throw std::invalid_argument("EvalCharacter: s must lie in Z_p");
}

EvalCharacter EvalCharacter::integer_point(long p, long j) {
    return EvalCharacter(p, mpz_class(j), norm_mod(j, p - 1), 0);
}

int EvalCharacter::sign() const {
    // <-1> = 1, so sigma(-1) = omega(-1)^(t + wild) = (-1)^(t + wild)
    return ((t_ + wild_) % 2 == 0) ? 1 : -1;
}

PadicElem EvalCharacter::s_at(int prec) const {
    if (s_int_) return PadicElem::from_int(p_, *s_int_, prec);
    return s_pad_->reduce_prec(prec);
}

long EvalCharacter::s_minus_val(long k) const {
    if (s_int_) {
        mpz_class d = *s_int_ - k;
        if (d == 0) return PadicElem::kInfPrec;
        return val_of_mpz(d, p_, PadicElem::kInfPrec);
    }
    PadicElem d = *s_pad_ - PadicElem::from_int(p_, k, s_pad_->prec());
    return d.is_zero() ? d.prec() : d.val();
}

PadicElem EvalCharacter::eval(long a, int prec) const {
    if (a % p_ == 0) throw std::invalid_argument("EvalCharacter::eval: p | a");
    PadicElem x = PadicElem::from_int(p_, a, prec + 1);
    auto [w, ang] = x.omega_angle_split();
    long te = t_effective();
    PadicElem tame = w.pow_int(te);
    return tame * ang.pow_principal(s_at(prec + 1)).reduce_prec(prec);
}

PadicElem EvalCharacter::eval_principal(const PadicElem& u) const {
    return u.pow_principal(s_at(u.prec()));
}

EvalCharacter EvalCharacter::shifted(long k) const {
    long nt = norm_mod(t_ - k, p_ - 1);
    if (s_int_) return EvalCharacter(p_, *s_int_ - k, nt, wild_);
    return EvalCharacter(p_, *s_pad_ - PadicElem::from_int(p_, k, s_pad_->prec()), nt, wild_);
}

std::string EvalCharacter::describe() const {
    std::ostringstream os;
    os << "(s=";
    if (s_int_)
        os << s_int_->get_str();
    else
        os << s_pad_->to_string();
    os << ", t=" << t_;
    if (wild_) os << ", wild=omega^" << wild_;
    os << ")";
    return os.str();
}

bool EvalCharacter::operator<(const EvalCharacter& o) const {
    if (t_ != o.t_) return t_ < o.t_;
    if (wild_ != o.wild_) return wild_ < o.wild_;
    std::string a = s_int_ ? s_int_->get_str() : s_pad_->to_string();
    std::string b = o.s_int_ ? o.s_int_->get_str() : o.s_pad_->to_string();
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

} // namespace padiclab
