#include "rydsim/level_scheme.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rydsim {

void LevelScheme::validate() const {
    auto pos = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string("scheme: ") + name + " must be positive");
    };
    pos(omega420_peak, "omega420_peak");
    pos(omega1015, "omega1015");
    pos(delta_intermediate, "delta_intermediate");
    pos(zeeman_split, "zeeman_split");
    pos(blockade, "blockade");
    pos(spacing, "spacing");
    pos(qubit_hyperfine_split, "qubit_hyperfine_split");
    pos(rprime_suppression, "rprime_suppression");
    double s = 0.0;
    for (double w : intermediate_couplings) {
        if (!(w >= 0.0)) throw std::invalid_argument("scheme: couplings must be nonnegative");
        s += w * w;
    }
    if (!(s > 0.0)) throw std::invalid_argument("scheme: couplings all zero");
    for (double o : intermediate_offsets)
        if (!std::isfinite(o)) throw std::invalid_argument("scheme: non-finite intermediate offset");
}

double LevelScheme::effective_rabi() const {
    double sw2 = 0.0;
    for (double w : intermediate_couplings) sw2 += w * w;
    return sw2 * omega420_peak * omega1015 / (2.0 * delta_intermediate);
}

void LevelScheme::set_couplings(const std::array<double, 3>& rel, double total) {
    double s = rel[0] + rel[1] + rel[2];
    if (!(s > 0.0)) throw std::invalid_argument("scheme: relative couplings sum to zero");
    for (int i = 0; i < 3; ++i)
        intermediate_couplings[i] = std::sqrt(total * rel[i] / s);
}

double LevelScheme::blockade_at(double r_um) const {
    if (!(r_um > 0.0)) throw std::domain_error("scheme: nonpositive spacing");
    double ratio = spacing / r_um;
    double r3 = ratio * ratio * ratio;
    return blockade * r3 * r3;
}

void DecayRates::validate() const {
    auto nonneg = [](double v, const char* name) {
        if (v < 0.0 || !std::isfinite(v))
            throw std::invalid_argument(std::string("rates: ") + name + " must be nonnegative");
    };
    nonneg(gamma_r, "gamma_r");
    nonneg(gamma_e, "gamma_e");
    nonneg(pos_sigma_radial, "pos_sigma_radial");
    nonneg(pos_sigma_axial, "pos_sigma_axial");
    auto post2 = [](double v, const char* name) {
        if (!(v > 0.0))
            throw std::invalid_argument(std::string("rates: ") + name + " must be positive");
    };
    post2(t2_doppler, "t2_doppler");
    post2(t2_420, "t2_420");
    post2(t2_1015, "t2_1015");
    for (const auto& [src, b] : branching) {
        if (b.loss < 0 || b.leak < 0 || b.pauli < 0)
            throw std::invalid_argument("rates: negative branching weight for " + src);
        if (std::fabs(b.loss + b.leak + b.pauli - 1.0) > 1e-12)
            throw std::invalid_argument("rates: branching for " + src + " does not sum to 1");
    }
}

double laser_only_t2(double t_measured, double t_doppler) {
    if (!(t_measured > 0.0) || !(t_doppler > 0.0))
        throw std::invalid_argument("laser_only_t2: times must be positive");
    double inv2 = 1.0 / (t_measured * t_measured) - 1.0 / (t_doppler * t_doppler);
    if (inv2 <= 0.0)
        throw std::invalid_argument("laser_only_t2: measured T2* must be below the Doppler limit");
    return 1.0 / std::sqrt(inv2);
}

} // namespace rydsim
