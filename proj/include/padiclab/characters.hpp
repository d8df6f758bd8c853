#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padiclab/cyclo.hpp"
#include "padiclab/padic.hpp"

namespace padiclab {

// Dirichlet character mod m with Conrey indexing.  Values are stored as
// exponents of a fixed primitive e-th root of unity (e = exact order), one
// entry per residue class; -1 marks the non-coprime classes.
//
// Convention note: the source material identifies a Dirichlet character with
// the Galois character mapping Frob_l^{-1} to chi(l).  That choice is recorded
// here as metadata only; it never changes a value computed by this class.
class DirichletCharacter {
public:
    static DirichletCharacter from_conrey(unsigned long modulus, unsigned long index);

    unsigned long modulus() const { return m_; }
    unsigned long order() const { return e_; }
    unsigned long conductor() const { return cond_; }
    unsigned long conrey() const { return conrey_; }
    bool is_primitive() const { return cond_ == m_; }
    bool is_trivial() const { return e_ == 1; }
    int parity() const;                 // chi(-1) in {+1, -1}
    bool is_even() const { return parity() == 1; }

    // exponent of zeta_e at n, or nullopt when gcd(n, m) > 1
    std::optional<long> exponent(long n) const;
    bool is_one_at(long n) const;       // chi(n) == 1
    CycloRational value(long n) const;  // 0 for non-coprime n
    // p-adic value; K must contain zeta_e (and p must not divide e)
    PadicElem value_padic(long n, long p, const FieldPtr& K, int prec) const;

    DirichletCharacter operator*(const DirichletCharacter& o) const; // primitive product
    DirichletCharacter inverse() const;
    DirichletCharacter primitive_part() const;
    // the character mod M induced by this one (conductor must divide M)
    DirichletCharacter induced_mod(unsigned long M) const;
    bool operator==(const DirichletCharacter& o) const;

    // Gauss sum sum_a chi(a) zeta_m^a for primitive chi; K must contain
    // zeta_{lcm(m, e)}
    PadicElem gauss_sum(long p, const FieldPtr& K, int prec) const;
    // smallest field parameter hosting both zeta_m and the values
    unsigned long embedding_order() const;

    std::string label() const; // "m.n" Conrey label

private:
    unsigned long m_ = 1, e_ = 1, cond_ = 1, conrey_ = 1;
    std::vector<long> exps_; // size m_, exponent of zeta_e or -1
    void finalize();         // derive exact order and conductor from exps_
    unsigned long find_conrey_() const;
};

// p-decency of the Eisenstein data (psi, tau, r): r > 0, or r = 0 and every
// prime l | Np satisfies l | cond(psi/tau) or (psi/tau)(l) != 1.
bool is_p_decent(const DirichletCharacter& psi, const DirichletCharacter& tau, long r, long p);

} // namespace padiclab
