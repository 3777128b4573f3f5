#pragma once

#include <vector>

#include "tfim/chain.hpp"

namespace tfim {

// Thermodynamic equilibrium values at h = 1.
double m_eq_thermo();
double e0_thermo();

// Finite-L ground-state magnetization and energy densities on the antiperiodic grid.
double m_eq_finite(int L);
double e0_finite(int L);

struct QuadOptions {
    int panels = 128;  // Gauss-Legendre panels (16 nodes each)
};

// Spectral function of the uniform magnetization density at h = 1.
double chi_second(double w);

// Reactive part by principal-value quadrature. Throws LogDivergence at w = 0.
double chi_prime(double w, const QuadOptions& opt = {});

struct SusceptibilitySample {
    double omega;
    double chi2;
    double chi1;  // NaN when not requested or undefined
};
std::vector<SusceptibilitySample> lrt_spectrum(const std::vector<double>& omegas, bool with_prime);

// Oscillatory switch-on kernel. The t-independent part of the integrand is
// tabulated once so that long traces cost one pass over the nodes per time.
class TransientKernel {
public:
    TransientKernel(double w0, double t_max, int base_panels = 64);

    // Bracket B(t) with transient = -(v0/pi) B(t). Right limit at t = 0.
    double bracket(double t) const;
    double transient(double t, double v0) const;
    double relaxation(double t, double v0) const;

    double w0() const { return w0_; }
    double t_max() const { return t_max_; }

private:
    double w0_;
    double t_max_;
    double c_;
    std::vector<double> x_;
    std::vector<double> g_;  // weight * regular integrand
};

double lrt_transient(double w0, double t, double v0);
double lrt_relaxation(double w0, double t, double v0);

struct LrtTrace {
    std::vector<double> t;
    std::vector<double> m;
    std::vector<double> transient;
    double in_phase = 0.0;      // coefficient of sin(w0 t): v0 * chi'
    double out_of_phase = 0.0;  // coefficient of cos(w0 t): -v0 * chi''
    double chi1 = 0.0;
    double chi2 = 0.0;
    double m_eq = 0.0;
};

// Requires a uniform drive (l = L) at h = 1.
double lrt_magnetization(double t, const DriveConfig& cfg);
LrtTrace lrt_trace(const DriveConfig& cfg, const std::vector<double>& times);

// Finite-size linear response of m(t) - m_eq(L) on the antiperiodic grid.
double lrt_finite_size_term(const KMode& mode, double t, const DriveConfig& cfg);
double lrt_finite_size(double t, const DriveConfig& cfg);

// Absorption rate per site W/L.
double lrt_energy_rate(const DriveConfig& cfg);

// Second-order energy density e0(t) - e0(0); thermodynamic and finite-L forms.
double lrt_energy(double t, const DriveConfig& cfg);
double lrt_energy_finite(double t, const DriveConfig& cfg);

// Local spectral function chi''_{j0}(w) at h = 1; odd in w.
double chi_local_spectral(int j, double w);

// chi''_l(w) for M_l = sum of sigma^x over l consecutive sites.
double chi_subchain_spectral(int l, double w);
double chi_subchain_prime(int l, double w0, const QuadOptions& opt = {});

// Linear response of <M_l>(t) - <M_l>_eq to the switched-on drive, transient
// included, rebuilt from chi''_l through the retarded kernel. l = L uses L chi''.
std::vector<double> lrt_subchain_response(const DriveConfig& cfg, const std::vector<double>& times,
                                          int base_panels = 8);

// Absorption rate -(1/8) dh^2 w0 chi''_l(w0) for the subchain drive.
double lrt_energy_rate_subchain(const DriveConfig& cfg);

}  // namespace tfim
