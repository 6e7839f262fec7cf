#pragma once

// Univariate and bivariate standard normal distribution functions.
namespace panelprec::normal {

double cdf(double z);

/// Upper tail 1 - cdf(z), accurate far into the tail.
double survival(double z);

/// Inverse of cdf. Throws DomainError unless 0 < p < 1.
double quantile(double p);

/// P(Z1 <= z1, Z2 <= z2) for standard normals with correlation rho in [-1, 1].
double bivariate_cdf(double z1, double z2, double rho);

/// P(Z1 > h, Z2 > k), computed directly rather than by complement.
double bivariate_upper(double h, double k, double rho);

}  // namespace panelprec::normal
