#include "doctest.h"
#include "padiclab/characters.hpp"
#include "padiclab/cyclo.hpp"

#include <numeric>

using namespace padiclab;

namespace {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// smallest prime = 1 mod n (so the values embed into Q_p itself)
long split_prime(unsigned long n) {
    for (long p = static_cast<long>(n) + 1;; p += static_cast<long>(n))
        if (is_prime(p)) return p;
}

} // namespace

TEST_CASE("cyclotomic basics") {
    CHECK(cyclotomic_poly(12).size() == 5); // degree phi(12) = 4
    // 1 + z + z^2 + z^3 + z^4 = 0 for z = zeta_5
    CycloRational s(5);
    for (int k = 0; k <= 4; ++k) s = s + CycloRational::zeta_power(5, k);
    CHECK(s.is_zero());
    CHECK(CycloRational::zeta_power(12, 12) == CycloRational::from_rational(1, 12));
    CHECK((CycloRational::zeta_power(8, 3) * CycloRational::zeta_power(8, 5)) ==
          CycloRational::from_rational(1, 8));
    // promotion: zeta_3 = zeta_12^4
    CHECK(CycloRational::zeta_power(3, 1).promoted(12) == CycloRational::zeta_power(12, 4));
}

TEST_CASE("Conrey construction matches the pinned small cases") {
    auto triv5 = DirichletCharacter::from_conrey(5, 1);
    CHECK(triv5.is_trivial());
    CHECK(triv5.conductor() == 1);

    auto chi5 = DirichletCharacter::from_conrey(5, 4);
    CHECK(chi5.order() == 2);
    CHECK(chi5.parity() == 1);
    CHECK(chi5.value(2).rational() == -1);
    // cross-check against the Legendre symbol mod 5
    for (long a = 1; a < 5; ++a) {
        bool qr = false;
        for (long x = 1; x < 5; ++x)
            if ((x * x) % 5 == a) qr = true;
        CHECK(chi5.value(a).rational() == (qr ? 1 : -1));
    }

    auto chi3 = DirichletCharacter::from_conrey(3, 2);
    CHECK(chi3.order() == 2);
    CHECK(chi3.parity() == -1);
    CHECK(chi3.value(2).rational() == chi3.value(-1).rational());

    // even primitive quadratic characters mod 8 and mod 12
    auto chi8 = DirichletCharacter::from_conrey(8, 5);
    CHECK(chi8.parity() == 1);
    CHECK(chi8.is_primitive());
    CHECK(chi8.value(3).rational() == -1);
    CHECK(chi8.value(5).rational() == -1);
    CHECK(chi8.value(7).rational() == 1);

    auto chi12 = DirichletCharacter::from_conrey(12, 11);
    CHECK(chi12.parity() == 1);
    CHECK(chi12.is_primitive());
    CHECK(chi12.value(5).rational() == -1);
    CHECK(chi12.value(7).rational() == -1);
    CHECK(chi12.value(11).rational() == 1);
}

TEST_CASE("products, inverses, conductor reduction") {
    auto chi5 = DirichletCharacter::from_conrey(5, 4);
    auto prod = chi5 * chi5.inverse();
    CHECK(prod.is_trivial());
    CHECK(prod.modulus() == 1); // reduced to conductor 1
    CHECK((chi5 * chi5).is_trivial());

    auto one = DirichletCharacter::from_conrey(1, 1);
    auto quot = one * chi5.inverse(); // psi / tau for psi = 1, tau = chi_5
    CHECK(quot.conductor() == 5);
    CHECK(quot.value(7).rational() == -1); // chi_5^{-1}(7) = chi_5(2) = -1

    // multiplicativity of values and parity
    auto chi7 = DirichletCharacter::from_conrey(7, 3);
    auto pr = chi7 * chi5;
    for (long a = 1; a < 35; ++a) {
        if (std::gcd(a, 35L) != 1) continue;
        CHECK(pr.value(a) == chi7.value(a) * chi5.value(a));
    }
    CHECK(pr.parity() == chi7.parity() * chi5.parity());
}

TEST_CASE("Conrey label round-trip for all characters of modulus <= 24") {
    for (unsigned long m = 1; m <= 24; ++m)
        for (unsigned long n = 1; n < std::max<unsigned long>(m, 2); ++n) {
            if (m > 1 && std::gcd(n, m) != 1) continue;
            auto chi = DirichletCharacter::from_conrey(m, n);
            CHECK(chi.conrey() == (m == 1 ? 1 : n));
            auto again = DirichletCharacter::from_conrey(m, chi.conrey());
            CHECK(chi == again);
            CHECK((chi * chi.inverse()).is_trivial());
        }
}

TEST_CASE("gauss sums: tau(chi) tau(chibar) = chi(-1) m, modulus <= 24") {
    // exhaustive identity check over a split prime (values land in Z_p)
    for (unsigned long m = 3; m <= 24; ++m) {
        for (unsigned long n = 2; n < m; ++n) {
            if (std::gcd(n, m) != 1) continue;
            auto chi = DirichletCharacter::from_conrey(m, n);
            if (!chi.is_primitive()) continue;
            unsigned long em = chi.embedding_order();
            long p = split_prime(em);
            const int M = 8;
            auto K = UnramifiedField::make(p, em, M);
            REQUIRE(K->f() == 1);
            auto t1 = chi.gauss_sum(p, K, M);
            auto t2 = chi.inverse().gauss_sum(p, K, M);
            auto rhs = PadicElem::from_int(p, chi.parity() * static_cast<long>(m), M, K);
            CHECK((t1 * t2).equal_mod(rhs, M));
        }
    }
}

TEST_CASE("gauss sums in genuine extensions") {
    // tau(chi_5)^2 = 5 for p = 7 (f = 4) and p = 3 (f = 4)
    auto chi5 = DirichletCharacter::from_conrey(5, 4);
    for (long p : {7L, 3L}) {
        const int M = 10;
        auto K = UnramifiedField::make(p, 10, M + 2);
        auto t = chi5.gauss_sum(p, K, M);
        CHECK((t * t).equal_mod(PadicElem::from_int(p, 5, M, K), M));
    }
    // any primitive chi mod 7 with p = 5: tau(chi) tau(chibar) = chi(-1) 7
    for (unsigned long n : {3UL, 2UL, 6UL}) {
        auto chi = DirichletCharacter::from_conrey(7, n);
        REQUIRE(chi.is_primitive());
        const int M = 8;
        auto K = UnramifiedField::make(5, chi.embedding_order(), M + 2);
        auto pr = chi.gauss_sum(5, K, M) * chi.inverse().gauss_sum(5, K, M);
        CHECK(pr.equal_mod(PadicElem::from_int(5, chi.parity() * 7, M, K), M));
    }

    // trivial character mod 1: empty-sum convention
    auto one = DirichletCharacter::from_conrey(1, 1);
    CHECK(one.gauss_sum(5, nullptr, 8).equal_mod(PadicElem::one(5, 8), 8));

    // errors: imprimitive and p | m
    auto imp = DirichletCharacter::from_conrey(10, 9); // conductor 5
    CHECK_FALSE(imp.is_primitive());
    auto K = UnramifiedField::make(3, 10, 8);
    CHECK_THROWS(imp.gauss_sum(3, K, 8));
    CHECK_THROWS(chi5.gauss_sum(5, K, 8));
}

TEST_CASE("frobenius compatibility of embedded values") {
    // frobenius(chi(a)) = chi(a)^p in the unramified field
    auto chi = DirichletCharacter::from_conrey(7, 3); // order 6
    const int M = 8;
    auto K = UnramifiedField::make(5, chi.embedding_order(), M + 2);
    for (long a = 1; a < 7; ++a) {
        auto v = chi.value_padic(a, 5, K, M);
        CHECK(v.frobenius().equal_mod(v.pow_int(5), M));
    }
}

TEST_CASE("p-decency") {
    auto one = DirichletCharacter::from_conrey(1, 1);
    auto chi5 = DirichletCharacter::from_conrey(5, 4);
    CHECK(is_p_decent(one, chi5, 0, 7));
    CHECK(is_p_decent(chi5, chi5, 2, 7));      // r > 0 clause
    CHECK_FALSE(is_p_decent(one, one, 0, 7));  // psi/tau trivial
    CHECK_THROWS(is_p_decent(one, chi5, 0, 5)); // p | N
}
