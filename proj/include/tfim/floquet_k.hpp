#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tfim/chain.hpp"

namespace tfim {

struct ModeState {
    double k = 0.0;
    cplx v;  // doubly occupied amplitude
    cplx u;  // empty amplitude
    double t = 0.0;
    double norm() const { return std::sqrt(std::norm(v) + std::norm(u)); }
};

struct KspaceOptions {
    int steps_per_period = 4096;
    int samples_per_period = 256;
};

ModeState initial_mode(double k);

// Per-mode generator in the (doubly occupied, empty) basis at time t.
Eigen::Matrix2cd mode_hamiltonian(double k, double t, const DriveConfig& cfg);
Eigen::Matrix2cd mode_hamiltonian_static(double k, double h);

double mode_magnetization(const ModeState& s);  // <m_k> = 2(|u|^2 - |v|^2)
double mode_energy(const ModeState& s, double h);  // <H_k^0>

// Fixed-step RK4 from s.t to t1 with step tau/steps_per_period (last step shortened).
ModeState propagate_mode(const ModeState& s, const DriveConfig& cfg, double t1,
                         int steps_per_period = 4096);

// One-period propagator U_k(tau); throws NumericalError if not unitary to 1e-10.
Eigen::Matrix2cd monodromy_mode(double k, const DriveConfig& cfg, int steps_per_period = 4096);

// Propagators U_k(s_j) at s_j = j tau / samples, j = 0..samples (inclusive).
std::vector<Eigen::Matrix2cd> period_propagators(double k, const DriveConfig& cfg,
                                                 int steps_per_period, int samples);

struct FloquetMode {
    double k = 0.0;
    double eps0 = 0.0;
    double mu = 0.0;  // quasi-energy of the "+" mode, in (0, w0/2]
    double omega = 0.0;
    std::vector<Eigen::Vector2cd> phi_plus;   // periodic mode on s_j = j tau / samples
    std::vector<Eigen::Vector2cd> phi_minus;  // partner with quasi-energy -mu
    cplx r_plus, r_minus;                     // overlaps with the initial ground pair
    Eigen::Matrix2cd monodromy;
};

// Throws DegeneracyError when the two eigenphases coincide.
FloquetMode floquet_mode(double k, const DriveConfig& cfg, const KspaceOptions& opt = {});

struct KspaceTrace {
    std::vector<double> t;
    std::vector<double> m;   // magnetization density
    std::vector<double> e0;  // energy density of the undriven Hamiltonian
    std::vector<double> e;   // energy density of the driven Hamiltonian
};

// m(t), e0(t), e(t) for t = i tau / samples, i = 0..n_periods*samples. Requires l = L.
KspaceTrace magnetization_trace(const DriveConfig& cfg, int n_periods, const KspaceOptions& opt = {});
KspaceTrace energy_per_site_trace(const DriveConfig& cfg, int n_periods, const KspaceOptions& opt = {});

struct DiagOffDiag {
    std::vector<double> t;
    std::vector<double> m;         // full magnetization density
    std::vector<double> diag;      // periodic part, same grid as t
    std::vector<double> offdiag;   // fluctuating part
    std::vector<double> diag_one_period;  // samples+1 values over [0, tau]
};

DiagOffDiag decompose_diag_offdiag(const DriveConfig& cfg, int n_periods, const KspaceOptions& opt = {});

struct FgValue {
    double g = 0.0;
    double f = 0.0;
};

// Periodic cosine/sine amplitudes of the off-diagonal term of mode k at time t.
FgValue fg_extraction(double k, double t, const DriveConfig& cfg, const KspaceOptions& opt = {});
FgValue fg_from_mode(const FloquetMode& fm, double t, const DriveConfig& cfg, int steps_per_period);

// Linear-response counterpart of f_k, divergent at 2 eps_k = w0.
double f_lrt(double k, const DriveConfig& cfg);

}  // namespace tfim
