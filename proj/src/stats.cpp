#include "rydsim/stats.hpp"

#include "rydsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rydsim {

namespace {

// series expansion of the lower function P(a,x), good for x < a+1
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// continued fraction for Q(a,x), modified Lentz, good for x >= a+1
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi2_sf(double chi2, int dof) {
    if (dof <= 0) throw std::invalid_argument("chi2_sf: dof must be positive");
    if (chi2 <= 0.0) return 1.0;
    return gamma_q(0.5 * dof, 0.5 * chi2);
}

double ks_distance(std::vector<double> sample,
                   const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (size_t i = 0; i < sample.size(); ++i) {
        double f = cdf(sample[i]);
        d = std::max(d, std::abs(f - (i + 1) / n));
        d = std::max(d, std::abs(f - i / n));
    }
    return d;
}

double PolyFit::eval(double x) const {
    double y = 0.0;
    for (size_t k = coef.size(); k-- > 0;) y = y * x + coef[k];
    return y;
}

double PolyFit::coef_err(int k) const {
    int m = static_cast<int>(coef.size());
    return std::sqrt(std::max(0.0, cov[static_cast<size_t>(k) * m + k]));
}

PolyFit polyfit(const std::vector<double>& x, const std::vector<double>& y,
                const std::vector<double>& sigma, int degree) {
    const int n = static_cast<int>(x.size());
    const int m = degree + 1;
    if (y.size() != x.size() || (!sigma.empty() && sigma.size() != x.size()))
        throw std::invalid_argument("polyfit: size mismatch");
    if (n < m) throw std::invalid_argument("polyfit: underdetermined");

    // weighted normal equations: (A^T W A) c = A^T W y
    std::vector<double> ata(static_cast<size_t>(m) * m, 0.0);
    std::vector<double> aty(m, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = sigma.empty() ? 1.0 : sigma[i];
        if (s <= 0.0) throw std::invalid_argument("polyfit: nonpositive sigma");
        double w = 1.0 / (s * s);
        double pj = 1.0;
        std::vector<double> pw(m);
        for (int j = 0; j < m; ++j) {
            pw[j] = pj;
            pj *= x[i];
        }
        for (int j = 0; j < m; ++j) {
            aty[j] += w * pw[j] * y[i];
            for (int k = 0; k <= j; ++k) ata[static_cast<size_t>(j) * m + k] += w * pw[j] * pw[k];
        }
    }
    for (int j = 0; j < m; ++j)
        for (int k = j + 1; k < m; ++k)
            ata[static_cast<size_t>(j) * m + k] = ata[static_cast<size_t>(k) * m + j];

    std::vector<double> cov = ata;
    int info = LAPACKE_dpotrf(LAPACK_ROW_MAJOR, 'L', m, cov.data(), m);
    if (info != 0) throw std::runtime_error("polyfit: singular normal equations");
    std::vector<double> c = aty;
    LAPACKE_dpotrs(LAPACK_ROW_MAJOR, 'L', m, 1, cov.data(), m, c.data(), 1);
    LAPACKE_dpotri(LAPACK_ROW_MAJOR, 'L', m, cov.data(), m);
    for (int j = 0; j < m; ++j)
        for (int k = j + 1; k < m; ++k)
            cov[static_cast<size_t>(j) * m + k] = cov[static_cast<size_t>(k) * m + j];

    PolyFit fit;
    fit.coef = c;
    fit.cov = cov;
    fit.dof = n - m;
    for (int i = 0; i < n; ++i) {
        double s = sigma.empty() ? 1.0 : sigma[i];
        double r = (fit.eval(x[i]) - y[i]) / s;
        fit.chi2 += r * r;
    }
    return fit;
}

double aic(double rss, int n_points, int n_params) {
    double safe = std::max(rss, 1e-300);
    return n_points * std::log(safe / n_points) + 2.0 * n_params;
}

} // namespace rydsim
