#pragma once

#include <gmpxx.h>

#include "padiclab/characters.hpp"
#include "padiclab/cyclo.hpp"

namespace padiclab {

// Bernoulli numbers with B_1 = -1/2 (cached; concurrent reads are safe, the
// cache is grown under a lock).
const mpq_class& bernoulli(unsigned n);

// Bernoulli polynomial value B_n(x) for rational x, exact.
mpq_class bernoulli_poly(unsigned n, const mpq_class& x);

// Generalized Bernoulli number B_{n,chi}. chi need not be primitive: the
// imprimitive version over the character's own modulus is what the modulus-F
// identities below use.  For primitive chi of conductor f this is
// f^(n-1) sum_a chi(a) B_n(a/f).
CycloRational gen_bernoulli(unsigned n, const DirichletCharacter& chi);

// L(chi, 1-n) = -B_{n,chi}/n for n >= 1 (chi primitive).
CycloRational dirichlet_L_nonpos(const DirichletCharacter& chi, long one_minus_n);

// The positive-side interpolation target of the Kubota-Leopoldt function:
//   (1 - p^{j-1} chi(p)^{-1}) * 2 N^j (j-1)! L(chi, j) / ((-2 pi i)^j tau(chi))
// routed through the functional equation, which collapses the archimedean
// factors to (1 - chibar(p) p^{j-1}) * L(chibar, 1-j).  Exact, float-free.
// Requires j >= 2, chi(-1) = (-1)^j and chi nontrivial.
CycloRational archimedean_constant(const DirichletCharacter& chi, long j, long p);

} // namespace padiclab
