#include "doctest.h"
#include "padiclab/padic.hpp"

#include <random>

using namespace padiclab;

namespace {
PadicElem pi(long p, long n, int M) { return PadicElem::from_int(p, n, M); }
}

TEST_CASE("teichmuller fixed points and the 5-adic lift of 2") {
    CHECK(pi(5, 1, 3).teichmuller().equal_mod(pi(5, 1, 3), 3));

    // oracle: iterate x -> x^5 mod 125 to the fixed point
    long x = 2;
    for (int i = 0; i < 6; ++i) {
        long y = 1;
        for (int j = 0; j < 5; ++j) y = (y * x) % 125;
        if (y == x) break;
        x = y;
    }
    CHECK(x == 57);
    CHECK((x * x) % 125 == 124); // 57^2 = -1 mod 125
    CHECK(pi(5, 2, 3).teichmuller().equal_mod(pi(5, 57, 3), 3));

    for (int M : {2, 8, 17})
        CHECK(pi(7, 6, M).teichmuller().equal_mod(pi(7, -1, M), M));
}

TEST_CASE("log_p basics and the independent long-sum oracle at u=6, p=5") {
    CHECK(pi(5, 1, 12).log().is_zero());

    // sum_{n=1}^{30} (-1)^(n+1) 5^n / n as an exact rational, embedded mod 5^10
    mpq_class s = 0;
    mpz_class p5 = 1;
    for (int n = 1; n <= 30; ++n) {
        p5 *= 5;
        mpq_class t(p5, n);
        t.canonicalize();
        s += (n % 2 == 1) ? t : -t;
    }
    PadicElem oracle = PadicElem::from_rational(5, s.get_num(), s.get_den(), 10);
    CHECK(pi(5, 6, 12).log().equal_mod(oracle, 10));

    PadicElem u = pi(5, 6, 12);
    CHECK((u * pi(5, 1, 12)).log().equal_mod(u.log(), 12));
}

TEST_CASE("omega/angle decomposition") {
    auto [w1, a1] = pi(5, 1, 6).omega_angle_split();
    CHECK(w1.equal_mod(pi(5, 1, 6), 6));
    CHECK(a1.equal_mod(pi(5, 1, 6), 6));

    auto [w2, a2] = pi(5, 2, 3).omega_angle_split();
    CHECK(w2.equal_mod(pi(5, 57, 3), 3));
    CHECK((w2 * a2).equal_mod(pi(5, 2, 3), 3));
    CHECK(a2.val() == 0);
    CHECK((a2 - pi(5, 1, 3)).val() >= 1); // angle part is 1 mod p

    auto [w3, a3] = pi(7, -1, 9).omega_angle_split();
    CHECK(w3.equal_mod(pi(7, -1, 9), 9));
    CHECK(a3.equal_mod(pi(7, 1, 9), 9));

    CHECK_THROWS(pi(5, 10, 6).omega_angle_split());
}

TEST_CASE("multiplicativity of omega and angle, log additivity on random units") {
    std::mt19937_64 rng(20260810);
    for (long p : {3L, 5L, 7L}) {
        const int M = 20;
        for (int trial = 0; trial < 1000; ++trial) {
            long x = static_cast<long>(rng() % 100000) + 1;
            long y = static_cast<long>(rng() % 100000) + 1;
            if (x % p == 0) ++x;
            if (y % p == 0) ++y;
            PadicElem ex = pi(p, x, M), ey = pi(p, y, M);
            auto [wx, ax] = ex.omega_angle_split();
            auto [wy, ay] = ey.omega_angle_split();
            auto [wxy, axy] = (ex * ey).omega_angle_split();
            REQUIRE(wxy.equal_mod(wx * wy, M));
            REQUIRE(axy.equal_mod(ax * ay, M));
            REQUIRE((ax * ay).log().equal_mod(ax.log() + ay.log(), M));
        }
    }
}

TEST_CASE("exp/log inverse on principal units, pow_principal") {
    for (long p : {3L, 5L, 7L}) {
        const int M = 18;
        PadicElem u = pi(p, 1 + p * 3, M);
        CHECK(u.log().exp().equal_mod(u, M));
        PadicElem two = pi(p, 2, M);
        CHECK(u.pow_principal(two).equal_mod(u * u, M));
        PadicElem half = PadicElem::from_rational(p, 1, 2, M);
        PadicElem r = u.pow_principal(half);
        CHECK((r * r).equal_mod(u, M));
    }
}

TEST_CASE("unramified field: frobenius fixes Q_p, has order f on roots of unity") {
    // p=7, m=5: f = ord of 7 mod 5 = 4
    auto K = UnramifiedField::make(7, 5, 16);
    REQUIRE(K->f() == 4);
    PadicElem z = PadicElem::zeta(K, 14);
    CHECK(z.pow_int(5).equal_mod(PadicElem::one(7, 14, K), 14));
    CHECK_FALSE(z.pow_int(1).equal_mod(PadicElem::one(7, 14, K), 14));

    // frobenius(zeta) = zeta^p and has order f
    PadicElem fz = z.frobenius();
    CHECK(fz.equal_mod(z.pow_int(7), 14));
    PadicElem t = z;
    for (unsigned i = 0; i < K->f(); ++i) t = t.frobenius();
    CHECK(t.equal_mod(z, 14));

    PadicElem c = PadicElem::from_int(7, 3, 14, K);
    CHECK(c.frobenius().equal_mod(c, 14));
    CHECK(c.is_in_qp());
    CHECK(c.to_qp().equal_mod(pi(7, 3, 14), 14));

    // p=11, m=5: f=1, zeta_5 in Z_11
    auto K1 = UnramifiedField::make(11, 5, 12);
    REQUIRE(K1->f() == 1);
    PadicElem z5 = PadicElem::zeta(K1, 10);
    CHECK(z5.pow_int(5).equal_mod(PadicElem::one(11, 10, K1), 10));
}

TEST_CASE("precision model") {
    // arithmetic precision rules
    PadicElem a = pi(5, 30, 10);      // v=1
    PadicElem b = pi(5, 7, 6);
    CHECK((a + b).prec() == 6);
    CHECK((a * b).prec() == 7);       // min(v_a + M_b, v_b + M_a) = min(1+6, 0+10)

    // recomputing at M+5 and truncating reproduces the M answer bit-exactly
    std::mt19937_64 rng(7);
    for (long p : {3L, 7L}) {
        for (int trial = 0; trial < 200; ++trial) {
            long x = static_cast<long>(rng() % 9999) + 2;
            long y = static_cast<long>(rng() % 9999) + 2;
            int M = 12;
            auto expr = [&](int prec) {
                PadicElem ex = pi(p, x, prec), ey = pi(p, y, prec);
                PadicElem u = ex * ey + ey.pow_int(3) - ex;
                if (u.is_zero() || u.val() != 0) return u;
                return u.teichmuller() * ex + u.log().exp();
            };
            PadicElem lo = expr(M), hi = expr(M + 5);
            CHECK(lo.to_string() == hi.reduce_prec(lo.prec()).to_string());
        }
    }
}

TEST_CASE("division, valuations, errors") {
    PadicElem a = pi(7, 98, 12); // 2 * 7^2
    CHECK(a.val() == 2);
    CHECK((a / pi(7, 2, 12)).equal_mod(pi(7, 49, 10), 10));
    CHECK(pi(7, 7, 5).inv().val() == -1); // valuation is explicit, not an error
    CHECK_THROWS(PadicElem::zero(7, 10).inv());
    CHECK_THROWS(pi(7, 14, 8).log());
    PadicElem q = PadicElem::from_rational(5, 1, 10, 8); // v = -1
    CHECK(q.val() == -1);
    CHECK((q * pi(5, 10, 9)).equal_mod(pi(5, 1, 8), 8));
}

TEST_CASE("canonical text form round-trips") {
    PadicElem a = PadicElem::from_rational(7, 22, 5, 9);
    PadicElem b = PadicElem::parse(7, a.to_string());
    CHECK(a.to_string() == b.to_string());
    CHECK(PadicElem::parse(7, "O(7^4)").prec() == 4);
    CHECK(PadicElem::parse(7, "0").is_exact_zero());
    PadicElem c = pi(5, 75, 9);
    CHECK(PadicElem::parse(5, c.to_string()).equal_mod(c, 9));
}
