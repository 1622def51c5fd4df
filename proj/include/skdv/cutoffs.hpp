#pragma once

namespace skdv::cutoffs {

// Smooth even bump: phi == 1 on [-1,1], supp phi = [-2,2], built from the
// exp(-1/t) partition-of-unity ratio on the transition band [1,2].
double bump(double x);
double bump_d1(double x);
double bump_d2(double x);

// Smooth tail profile: 0 for |xi| <= 1/2, 1 for |xi| >= 1, same ratio
// construction on [1/2, 1].
double tail_profile(double xi);

// Rescaled family phi_K(x) = phi(x/K). K = +inf gives the identity plateau.
// All of these throw std::invalid_argument for K <= 0.
double phi_K(double x, double K);
double phi_K_d1(double x, double K);   // d/dx phi(x/K)
double phi_K_d2(double x, double K);
double psi_K(double x, double K);      // x*phi_K'(x) + phi_K(x) = d/dx [x*phi_K(x)]

// psi1_K(x) = int_0^x s   phi_K(s) ds   (== x^2/2 on the plateau |x| <= K)
// psi2_K(x) = int_0^x s^2 phi_K(s) ds   (== x^3/3 on the plateau |x| <= K)
// Outside the plateau the tail is evaluated by adaptive quadrature,
// absolute tolerance 1e-10.
double psi1_K(double x, double K);
double psi2_K(double x, double K);

}  // namespace skdv::cutoffs
