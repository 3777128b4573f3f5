#include "tfim/lrt.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <gsl/gsl_sf_expint.h>

#include "tfim/errors.hpp"
#include "tfim/quadrature.hpp"

namespace tfim {

namespace {

constexpr double kBand = 4.0;

// Integrates f over [a, b] on pieces that shrink geometrically toward both ends.
template <class F>
double integrate_graded(F&& f, double a, double b, int pieces, int panels) {
    if (b <= a) return 0.0;
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    double lo = mid;
    for (int i = 0; i < pieces; ++i) {
        const double next = (i + 1 == pieces) ? a : a + 0.5 * (lo - a);
        sum += integrate_panels(f, next, lo, panels);
        lo = next;
    }
    double hi = mid;
    for (int i = 0; i < pieces; ++i) {
        const double next = (i + 1 == pieces) ? b : b - 0.5 * (b - hi);
        sum += integrate_panels(f, hi, next, panels);
        hi = next;
    }
    return sum;
}

double fejer(int l, double theta) {
    const double s = std::sin(0.5 * theta);
    if (std::abs(s) < 1e-9) return static_cast<double>(l) * l;
    const double n = std::sin(0.5 * l * theta);
    return n * n / (s * s);
}

double k_of_eps(double e) { return 2.0 * std::asin(std::clamp(0.5 * e, -1.0, 1.0)); }

// Symmetrized amplitude ratio for the two-quasiparticle weight.
double rbar(double e, double ep) {
    const double d = (4.0 - e * e) * (4.0 - ep * ep);
    if (d <= 0.0) return 0.0;
    return (4.0 - e * ep) / std::sqrt(d);
}

// -(1/pi) * integral over the allowed eps window of kernel(eps, w - eps),
// with eps = a + (b - a)(1 - cos phi)/2 to absorb the edge square roots.
template <class K>
double eps_window_integral(double w, int panels, K&& kernel) {
    const double a = std::max(0.0, w - 2.0);
    const double b = std::min(w, 2.0);
    if (!(b > a)) return 0.0;
    auto f = [&](double phi) {
        const double e = a + 0.5 * (b - a) * (1.0 - std::cos(phi));
        const double jac = 0.5 * (b - a) * std::sin(phi);
        return kernel(e, w - e) * jac;
    };
    const double half = 0.5 * kPi;
    return -(integrate_panels(f, 0.0, half, panels) + integrate_panels(f, half, kPi, panels)) / kPi;
}

std::complex<double> phase_integral(double x, double t) {
    // integral_0^t exp(i x s) ds
    const double z = x * t;
    if (std::abs(z) < 1e-4) return t * std::complex<double>(1.0 - z * z / 6.0, 0.5 * z);
    return (std::exp(std::complex<double>(0.0, z)) - 1.0) / std::complex<double>(0.0, x);
}

double pair_energy_weight(double k, double t, double w0, double v0) {
    const double eps = dispersion(k);
    const double om = 2.0 * eps;
    const double c = std::cos(0.5 * k);
    const std::complex<double> I =
        (phase_integral(om + w0, t) - phase_integral(om - w0, t)) / std::complex<double>(0.0, 2.0);
    return om * 4.0 * c * c * v0 * v0 * std::norm(I);
}

void require_uniform_critical(const DriveConfig& cfg, const char* what) {
    cfg.validate();
    if (!cfg.uniform())
        throw InvalidConfig(std::string(what) + " needs a uniform drive (l = L); use the subchain path");
    if (cfg.h != 1.0) throw InvalidConfig(std::string(what) + " is only available at h = 1");
}

}  // namespace

double m_eq_thermo() { return 2.0 / kPi; }
double e0_thermo() { return -2.0 / kPi; }

double m_eq_finite(int L) {
    double s = 0.0;
    for (const auto& m : build_kgrid(L)) s += std::sin(0.5 * m.k);
    return 2.0 * s / L;
}

double e0_finite(int L) { return -m_eq_finite(L); }

double chi_second(double w) {
    const double a = std::abs(w);
    if (a >= kBand || w == 0.0) return 0.0;
    const double q = w / kBand;
    const double v = std::sqrt((1.0 - q) * (1.0 + q));
    return w > 0.0 ? -v : v;
}

double chi_prime(double w, const QuadOptions& opt) {
    w = std::abs(w);
    if (w == 0.0)
        throw LogDivergence("chi' diverges logarithmically at zero frequency at the critical point");
    const int pieces = 32;
    const int panels = std::max(1, opt.panels / 64);
    if (w >= kBand) {
        // (1/pi) int_0^4 chi''(x) 2x/(x^2 - w^2) dx with x = 4 sin(phi)
        // x^2 - w^2 written as (16 - w^2) - 16 cos^2 to stay finite at w = 4
        auto f = [w](double phi) {
            const double s = std::sin(phi), c = std::cos(phi);
            const double x = kBand * s;
            return -c * 2.0 * x / ((kBand * kBand - w * w) - kBand * kBand * c * c) * kBand * c;
        };
        return integrate_graded(f, 0.0, 0.5 * kPi, pieces, panels) / kPi;
    }
    auto fx = [w](double x) {
        const double q = x / kBand;
        return -std::sqrt(std::max(0.0, (1.0 - q) * (1.0 + q))) * 2.0 * x / (x + w);
    };
    const double fw = fx(w);
    auto g = [&](double phi) {
        const double x = kBand * std::sin(phi);
        const double c = std::cos(phi);
        const double fxv = -c * 2.0 * x / (x + w);
        return (fxv - fw) / (x - w) * kBand * c;
    };
    const double pw = std::asin(w / kBand);
    double s = integrate_graded(g, 0.0, pw, pieces, panels) +
               integrate_graded(g, pw, 0.5 * kPi, pieces, panels);
    s += fw * std::log((kBand - w) / w);
    return s / kPi;
}

std::vector<SusceptibilitySample> lrt_spectrum(const std::vector<double>& omegas, bool with_prime) {
    std::vector<SusceptibilitySample> out;
    out.reserve(omegas.size());
    for (double w : omegas) {
        SusceptibilitySample s{w, chi_second(w), std::numeric_limits<double>::quiet_NaN()};
        if (with_prime && w != 0.0) s.chi1 = chi_prime(w);
        out.push_back(s);
    }
    return out;
}

TransientKernel::TransientKernel(double w0, double t_max, int base_panels)
    : w0_(std::abs(w0)), t_max_(std::max(0.0, t_max)), c_(chi_second(std::abs(w0))) {
    if (w0_ == 0.0) throw InvalidConfig("transient kernel needs a nonzero drive frequency");
    const int panels = base_panels + static_cast<int>(std::ceil(0.75 * t_max_));
    auto add_segment = [&](double p0, double p1, int np) {
        auto [phis, ws] = panel_nodes(p0, p1, np);
        for (std::size_t i = 0; i < phis.size(); ++i) {
            const double s = std::sin(phis[i]), c = std::cos(phis[i]);
            const double x = kBand * s;
            const double chi = -c;
            double val;
            if (w0_ < kBand)
                val = (chi - c_) / (x - w0_) - (chi + c_) / (x + w0_);
            else
                val = chi * 2.0 * w0_ / ((kBand * kBand - w0_ * w0_) - kBand * kBand * c * c);
            x_.push_back(x);
            g_.push_back(ws[i] * val * kBand * c);
        }
    };
    if (w0_ < kBand) {
        const double pw = std::asin(w0_ / kBand);
        const int n1 = std::max(4, static_cast<int>(std::ceil(panels * pw / (0.5 * kPi))));
        add_segment(0.0, pw, n1);
        add_segment(pw, 0.5 * kPi, std::max(4, panels - n1 + 4));
    } else {
        add_segment(0.0, 0.5 * kPi, panels);
    }
}

double TransientKernel::bracket(double t) const {
    if (t < 0.0) throw InvalidConfig("transient is defined for t >= 0");
    if (t > t_max_ * (1.0 + 1e-12) + 1e-12)
        throw InvalidConfig("time exceeds the range the transient kernel was built for");
    double band = 0.0;
    if (t > 0.0)
        for (std::size_t i = 0; i < x_.size(); ++i) band += g_[i] * std::sin(x_[i] * t);
    if (w0_ >= kBand) return band;
    double tail;
    if (t == 0.0) {
        tail = kPi;
    } else {
        const double a = (kBand - w0_) * t, b = (kBand + w0_) * t;
        tail = std::cos(w0_ * t) * (kPi - gsl_sf_Si(a) - gsl_sf_Si(b)) +
               std::sin(w0_ * t) * (gsl_sf_Ci(b) - gsl_sf_Ci(a));
    }
    return band - c_ * tail;
}

double TransientKernel::transient(double t, double v0) const { return -v0 / kPi * bracket(t); }

double TransientKernel::relaxation(double t, double v0) const { return -transient(t, v0); }

double lrt_transient(double w0, double t, double v0) {
    return TransientKernel(w0, t).transient(t, v0);
}

double lrt_relaxation(double w0, double t, double v0) {
    return TransientKernel(w0, t).relaxation(t, v0);
}

LrtTrace lrt_trace(const DriveConfig& cfg, const std::vector<double>& times) {
    require_uniform_critical(cfg, "LRT magnetization");
    LrtTrace tr;
    tr.m_eq = m_eq_thermo();
    tr.chi1 = chi_prime(cfg.omega);
    tr.chi2 = chi_second(cfg.omega);
    const double v0 = cfg.v0();
    tr.in_phase = v0 * tr.chi1;
    tr.out_of_phase = -v0 * tr.chi2;
    double tmax = 0.0;
    for (double t : times) {
        if (t < 0.0) throw InvalidConfig("LRT trace needs t >= 0");
        tmax = std::max(tmax, t);
    }
    const TransientKernel kern(cfg.omega, tmax);
    tr.t = times;
    tr.m.reserve(times.size());
    tr.transient.reserve(times.size());
    for (double t : times) {
        const double f = kern.transient(t, v0);
        tr.transient.push_back(f);
        tr.m.push_back(tr.m_eq + tr.in_phase * std::sin(cfg.omega * t) +
                       tr.out_of_phase * std::cos(cfg.omega * t) + f);
    }
    return tr;
}

double lrt_magnetization(double t, const DriveConfig& cfg) { return lrt_trace(cfg, {t}).m.front(); }

double lrt_finite_size_term(const KMode& mode, double t, const DriveConfig& cfg) {
    const double w0 = cfg.omega;
    const double om = 2.0 * mode.eps0;
    const double c = std::cos(0.5 * mode.k);
    const double pref = cfg.dh * 4.0 / cfg.L * c * c;
    const double d = w0 - om;
    if (std::abs(d) < 1e-7 * std::max(1.0, w0)) {
        // secular limit of the resonant term
        return -pref * (0.5 * t * std::cos(w0 * t) - std::sin(w0 * t) / (2.0 * w0));
    }
    return -pref * (om * std::sin(w0 * t) - w0 * std::sin(om * t)) / (d * (w0 + om));
}

double lrt_finite_size(double t, const DriveConfig& cfg) {
    require_uniform_critical(cfg, "finite-size LRT");
    double s = 0.0;
    for (const auto& m : build_kgrid(cfg.L)) s += lrt_finite_size_term(m, t, cfg);
    return s;
}

double lrt_energy_rate(const DriveConfig& cfg) {
    return -(cfg.omega / 8.0) * cfg.dh * cfg.dh * chi_second(cfg.omega);
}

double lrt_energy(double t, const DriveConfig& cfg) {
    require_uniform_critical(cfg, "LRT energy");
    if (t <= 0.0) return 0.0;
    const double w0 = cfg.omega, v0 = cfg.v0();
    auto f = [&](double k) { return pair_energy_weight(k, t, w0, v0); };
    const int panels = 32 + static_cast<int>(std::ceil(0.5 * t));
    double s;
    if (w0 < kBand) {
        const double k0 = 2.0 * std::asin(0.25 * w0);
        const int n1 = std::max(8, static_cast<int>(std::ceil(panels * k0 / kPi)));
        s = integrate_panels(f, 0.0, k0, n1) + integrate_panels(f, k0, kPi, std::max(8, panels - n1 + 8));
    } else {
        s = integrate_panels(f, 0.0, kPi, panels);
    }
    return s / (2.0 * kPi);
}

double lrt_energy_finite(double t, const DriveConfig& cfg) {
    require_uniform_critical(cfg, "LRT energy");
    if (t <= 0.0) return 0.0;
    double s = 0.0;
    for (const auto& m : build_kgrid(cfg.L)) s += pair_energy_weight(m.k, t, cfg.omega, cfg.v0());
    return s / cfg.L;
}

double chi_local_spectral(int j, double w) {
    if (w < 0.0) return -chi_local_spectral(j, -w);
    if (w >= kBand || w == 0.0) return 0.0;
    const double jj = static_cast<double>(j);
    auto kern = [jj](double e, double ep) {
        const double k1 = k_of_eps(e), k2 = k_of_eps(ep);
        return rbar(e, ep) * std::cos(k1 * jj) * std::cos(k2 * jj) + std::sin(k1 * jj) * std::sin(k2 * jj);
    };
    return eps_window_integral(w, 8 + std::abs(j), kern);
}

double chi_subchain_spectral(int l, double w) {
    if (l < 1) throw InvalidConfig("subchain length must be >= 1");
    if (w < 0.0) return -chi_subchain_spectral(l, -w);
    if (w >= kBand || w == 0.0) return 0.0;
    auto kern = [l](double e, double ep) {
        const double k1 = k_of_eps(e), k2 = k_of_eps(ep);
        const double r = rbar(e, ep);
        return 0.5 * (r + 1.0) * fejer(l, k1 - k2) + 0.5 * (r - 1.0) * fejer(l, k1 + k2);
    };
    return eps_window_integral(w, 8 + 2 * l, kern);
}

double chi_subchain_prime(int l, double w0, const QuadOptions& opt) {
    if (l < 1) throw InvalidConfig("subchain length must be >= 1");
    w0 = std::abs(w0);
    if (w0 == 0.0) throw LogDivergence("subchain chi' diverges at zero frequency");
    const int panels = std::max(4, opt.panels / 8);
    // segments between the singular points 0, 2, w0, 4; x = mid - half*cos(phi) per segment
    std::vector<double> cuts{0.0, 2.0, kBand};
    if (w0 < kBand) cuts.push_back(w0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto fx = [&](double x) { return chi_subchain_spectral(l, x) * 2.0 * x / (x + w0); };
    const bool pv = w0 < kBand;
    const double fw = pv ? fx(w0) : 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        auto g = [&](double phi) {
            const double x = a + 0.5 * (b - a) * (1.0 - std::cos(phi));
            const double jac = 0.5 * (b - a) * std::sin(phi);
            if (pv) return (fx(x) - fw) / (x - w0) * jac;
            return chi_subchain_spectral(l, x) * 2.0 * x / (x * x - w0 * w0) * jac;
        };
        s += integrate_panels(g, 0.0, kPi, panels);
    }
    if (pv) s += fw * std::log((kBand - w0) / w0);
    return s / kPi;
}

std::vector<double> lrt_subchain_response(const DriveConfig& cfg, const std::vector<double>& times,
                                          int base_panels) {
    cfg.validate();
    if (cfg.h != 1.0) throw InvalidConfig("subchain response is only available at h = 1");
    const double w0 = cfg.omega;
    double t_max = 0.0;
    for (double t : times) t_max = std::max(t_max, std::abs(t));
    const int panels = base_panels + static_cast<int>(std::ceil(t_max));
    // nodes in w with w = a + (b - a)(1 - cos phi)/2 on [0, w0] and [w0, 4]
    std::vector<double> x, g;
    std::vector<double> cuts{0.0, kBand};
    if (w0 < kBand) cuts.insert(cuts.begin() + 1, w0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        auto [phi, wt] = panel_nodes(0.0, kPi, panels);
        for (std::size_t n = 0; n < phi.size(); ++n) {
            const double w = a + 0.5 * (b - a) * (1.0 - std::cos(phi[n]));
            const double jac = 0.5 * (b - a) * std::sin(phi[n]);
            const double c2 = cfg.uniform() ? cfg.L * chi_second(w) : chi_subchain_spectral(cfg.l, w);
            x.push_back(w);
            g.push_back(wt[n] * jac * c2);
        }
    }
    std::vector<double> out(times.size(), 0.0);
    for (std::size_t it = 0; it < times.size(); ++it) {
        const double t = times[it];
        if (t <= 0.0) continue;
        const double s0 = std::sin(w0 * t), c0 = std::cos(w0 * t);
        double s = 0.0;
        for (std::size_t n = 0; n < x.size(); ++n) {
            const double w = x[n];
            const double d = w - w0;
            double kern;  // integral_0^t sin(w s) sin(w0 (t - s)) ds
            if (std::abs(d * t) < 1e-5)
                kern = 0.5 * (s0 / w0 - t * c0);
            else
                kern = (w * s0 - w0 * std::sin(w * t)) / (w * w - w0 * w0);
            s += g[n] * kern;
        }
        out[it] = 2.0 * cfg.v0() / kPi * s;
    }
    return out;
}

double lrt_energy_rate_subchain(const DriveConfig& cfg) {
    return -(cfg.omega / 8.0) * cfg.dh * cfg.dh * chi_subchain_spectral(cfg.l, cfg.omega);
}

}  // namespace tfim
