#include "padiclab/cyclo.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace padiclab {

unsigned long euler_phi(unsigned long n) {
    unsigned long r = n;
    for (unsigned long q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            r -= r / q;
            while (n % q == 0) n /= q;
        }
    if (n > 1) r -= r / n;
    return r;
}

namespace {

// exact division of integer polynomials: a / b with b monic
std::vector<mpz_class> zpoly_div(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
        size_t off = a.size() - b.size();
        mpz_class t = a.back();
        q[off] = t;
        for (size_t j = 0; j < b.size(); ++j) a[off + j] -= t * b[j];
        while (a.size() > 1 && a.back() == 0) a.pop_back();
        if (a.size() < b.size()) break;
    }
    return q;
}

} // namespace

const std::vector<mpz_class>& cyclotomic_poly(unsigned long n) {
    static std::map<unsigned long, std::vector<mpz_class>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    // Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e, filled bottom-up
    for (unsigned long d = 1; d <= n; ++d) {
        if (n % d != 0 || cache.count(d)) continue;
        std::vector<mpz_class> num(d + 1, 0);
        num[0] = -1;
        num[d] = 1;
        for (unsigned long e = 1; e < d; ++e)
            if (d % e == 0) num = zpoly_div(std::move(num), cache[e]);
        cache[d] = std::move(num);
    }
    return cache[n];
}

CycloRational CycloRational::from_rational(const mpq_class& q, unsigned e) {
    CycloRational r(e);
    r.c_[0] = q;
    return r;
}

CycloRational CycloRational::reduce(unsigned e, std::vector<mpq_class> big) {
    const auto& phi = cyclotomic_poly(e);
    size_t deg = phi.size() - 1; // = euler_phi(e)
    for (size_t i = big.size(); i-- > deg;) {
        mpq_class t = big[i];
        if (t == 0) continue;
        big[i] = 0;
        for (size_t j = 0; j < deg; ++j) big[i - deg + j] -= t * phi[j];
    }
    CycloRational r(e);
    for (size_t i = 0; i < deg && i < big.size(); ++i) {
        big[i].canonicalize();
        r.c_[i] = big[i];
    }
    return r;
}

CycloRational CycloRational::zeta_power(unsigned e, long k) {
    k %= static_cast<long>(e);
    if (k < 0) k += e;
    std::vector<mpq_class> big(static_cast<size_t>(k) + 1, 0);
    big[static_cast<size_t>(k)] = 1;
    return reduce(e, std::move(big));
}

bool CycloRational::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycloRational::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

mpq_class CycloRational::rational() const {
    if (!is_rational()) throw std::domain_error("CycloRational: not rational");
    return c_[0];
}

CycloRational CycloRational::promoted(unsigned E) const {
    if (E == e_) return *this;
    if (E % e_ != 0) throw std::invalid_argument("CycloRational::promoted: e must divide E");
    unsigned long s = E / e_;
    std::vector<mpq_class> big(static_cast<size_t>((c_.size() - 1) * s + 1), 0);
    for (size_t i = 0; i < c_.size(); ++i) big[i * s] = c_[i];
    return reduce(E, std::move(big));
}

CycloRational CycloRational::operator+(const CycloRational& o) const {
    if (e_ != o.e_) {
        unsigned E = static_cast<unsigned>(std::lcm(e_, o.e_));
        return promoted(E) + o.promoted(E);
    }
    CycloRational r(e_);
    for (size_t i = 0; i < c_.size(); ++i) {
        r.c_[i] = c_[i] + o.c_[i];
        r.c_[i].canonicalize();
    }
    return r;
}

CycloRational CycloRational::operator-() const {
    CycloRational r(e_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
    return r;
}

CycloRational CycloRational::operator-(const CycloRational& o) const { return *this + (-o); }

CycloRational CycloRational::operator*(const CycloRational& o) const {
    if (e_ != o.e_) {
        unsigned E = static_cast<unsigned>(std::lcm(e_, o.e_));
        return promoted(E) * o.promoted(E);
    }
    std::vector<mpq_class> big(2 * c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            big[i + j] += c_[i] * o.c_[j];
        }
    }
    return reduce(e_, std::move(big));
}

CycloRational CycloRational::scaled(const mpq_class& q) const {
    CycloRational r(e_);
    for (size_t i = 0; i < c_.size(); ++i) {
        r.c_[i] = c_[i] * q;
        r.c_[i].canonicalize();
    }
    return r;
}

CycloRational CycloRational::galois(long k) const {
    std::vector<mpq_class> big;
    CycloRational r(e_);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        CycloRational t = zeta_power(e_, k * static_cast<long>(i)).scaled(c_[i]);
        r = r + t;
    }
    return r;
}

bool CycloRational::operator==(const CycloRational& o) const {
    if (e_ == o.e_) return c_ == o.c_;
    return (*this - o).is_zero();
}

PadicElem CycloRational::embed(long p, const FieldPtr& K, int prec) const {
    PadicElem acc = PadicElem::zero(p, prec, K);
    if (e_ == 1 || is_rational()) {
        return PadicElem::from_rational(p, c_[0].get_num(), c_[0].get_den(), prec, K);
    }
    if (!K) throw std::invalid_argument("CycloRational::embed: needs a field with zeta");
    if (K->m() % e_ != 0)
        throw std::invalid_argument("CycloRational::embed: field does not contain zeta_e");
    PadicElem ze = PadicElem::zeta(K, prec).pow_int(mpz_class(K->m() / e_));
    PadicElem zp = PadicElem::one(p, prec, K);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) zp = zp * ze;
        if (c_[i] == 0) continue;
        acc = acc + zp * PadicElem::from_rational(p, c_[i].get_num(), c_[i].get_den(), prec, K);
    }
    return acc;
}

std::string CycloRational::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << c_[i].get_str();
        if (i == 1) os << "*z" << e_;
        if (i > 1) os << "*z" << e_ << "^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

} // namespace padiclab
