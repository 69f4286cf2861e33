#ifndef FRACLAN_SPECIAL_HPP
#define FRACLAN_SPECIAL_HPP

#include "fraclan/jet.hpp"

namespace fraclan {

// Polygamma psi^(n) for n in {0,1,2}; handles negative non-integer x by the
// reflection formulas.
double polygamma(int n, double x);

// log Gamma as a jet in its argument.
Jet3 lgamma_jet(const Jet3& x);

// Hurwitz zeta Z(s,q) = sum_{k>=0} (k+q)^{-s} for s > 1, q > 0, evaluated by
// Euler-Maclaurin summation to near machine precision.
double hurwitz_zeta(double s, double q);
// Same with s carried as a jet (derivatives with respect to s).
Jet3 hurwitz_zeta(const Jet3& s, double q);

// Standard normal CDF.
double normal_cdf(double x);

// Kolmogorov asymptotic tail Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_tail(double lambda);

}  // namespace fraclan

#endif
