#pragma once

#include <functional>
#include <vector>

namespace rydsim {

// Upper regularized incomplete gamma Q(a, x) = Γ(a,x)/Γ(a).
double gamma_q(double a, double x);

// Survival function of the chi-square distribution, P(X > chi2 | dof).
double chi2_sf(double chi2, int dof);

// One-sample Kolmogorov-Smirnov statistic of `sample` against a continuous
// CDF. The sample is copied and sorted internally.
double ks_distance(std::vector<double> sample,
                   const std::function<double(double)>& cdf);

// Weighted polynomial least squares, coefficients in ascending powers.
// cov is the (degree+1)^2 row-major parameter covariance under the given
// per-point standard deviations.
struct PolyFit {
    std::vector<double> coef;
    std::vector<double> cov;
    double chi2 = 0.0;
    int dof = 0;

    double eval(double x) const;
    double coef_err(int k) const;
};

// sigma may be empty (unit weights). Throws std::invalid_argument on size
// mismatch or underdetermined fits, std::runtime_error on a singular system.
PolyFit polyfit(const std::vector<double>& x, const std::vector<double>& y,
                const std::vector<double>& sigma, int degree);

// Akaike information criterion for a Gaussian residual model.
double aic(double rss, int n_points, int n_params);

} // namespace rydsim
