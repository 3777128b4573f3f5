#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tfim/chain.hpp"

namespace tfim {

// Columns alpha = 1..L of the frame are the evolved quasiparticle vectors (U_a; V_a).
// The other L columns are their particle-hole partners (V_a^*; U_a^*).
struct BdGFrame {
    double t = 0.0;
    Eigen::MatrixXcd U;
    Eigen::MatrixXcd V;
    std::vector<double> eps;  // eigenvalues of Hm(0) for the positive branch, ascending

    int L() const { return static_cast<int>(U.rows()); }
    Eigen::MatrixXcd half() const;  // 2L x L block (U; V)
    Eigen::MatrixXcd full() const;  // [[U, V*], [V, U*]]
    double unitarity_defect() const;
};

struct BdGOptions {
    int steps_per_period = 1024;
    int samples_per_period = 64;
    bool skip_unitarity_check = false;
};

BdGFrame initial_frame(const DriveConfig& cfg);
double ground_energy(const BdGFrame& f0);  // -sum eps

// RK4 on i dW/dt = 2 Hm(t) W from frame.t to t1. Throws NumericalError on drift > 1e-7.
BdGFrame propagate_bdg(const BdGFrame& frame, const DriveConfig& cfg, double t1,
                       int steps_per_period = 1024);

// Propagator columns P(s)(I; 0) over one period at s_j = j tau / samples, j = 0..samples.
// P(s) = [[X, Y^*], [Y, X^*]] with X, Y the returned top and bottom blocks.
struct PeriodTable {
    std::vector<Eigen::MatrixXcd> X;
    std::vector<Eigen::MatrixXcd> Y;
    Eigen::MatrixXcd full(int j) const;
};
PeriodTable period_table(const DriveConfig& cfg, int steps_per_period, int samples);
Eigen::MatrixXcd monodromy(const DriveConfig& cfg, int steps_per_period = 1024);

struct QuasiEnergySet {
    double omega = 0.0;
    std::vector<double> mu;      // in (-w0/2, w0/2], ascending
    Eigen::MatrixXcd vectors;    // columns are monodromy eigenvectors
    std::vector<int> partner;    // particle-hole partner index (mu -> -mu)
    double hermiticity_defect = 0.0;
};

// Cayley route by default; direct unitary diagonalization otherwise.
QuasiEnergySet quasienergies(const Eigen::MatrixXcd& P, double omega, bool cayley = true);

struct SiteMagnetization {
    std::vector<double> mj;
    double m = 0.0;   // average over the chain
    double Ml = 0.0;  // sum over the first l sites
};

// occupations: <gamma^dag gamma> per quasiparticle; empty means vacuum.
SiteMagnetization magnetization_sites(const BdGFrame& frame, int l,
                                      const std::vector<double>& occupations = {});

// <H(t)> in the vacuum of the frame, using the given site fields.
double bdg_energy(const BdGFrame& frame, const std::vector<double>& fields, double J = 1.0);

struct BdgRun {
    std::vector<double> t;
    std::vector<double> Ml;  // subchain magnetization M_l(t)
    std::vector<double> m;   // chain average m(t)
    std::vector<double> e0_boundary;  // E0(n tau)/L, n = 0..n_periods
    std::vector<double> e_boundary;   // E(n tau)/L
};

// Samples M_l and m on t = i tau / samples, i = 0..n_periods*samples.
BdgRun bdg_run(const DriveConfig& cfg, int n_periods, const BdGOptions& opt = {});

struct LocalFloquet {
    std::vector<double> t;
    std::vector<double> Ml;
    std::vector<double> diag;
    std::vector<double> offdiag;
    std::vector<double> hist_omega;  // bin centres over (-w0, w0]
    std::vector<double> hist_re;
    std::vector<double> hist_im;
    QuasiEnergySet qset;
};

LocalFloquet floquet_decompose_local(const DriveConfig& cfg, int n_periods, const BdGOptions& opt = {},
                                     int bins = 512, double t0 = 0.0);

struct QuasiPair {
    int a;
    int b;
    double gap;
};

std::vector<QuasiPair> quasidegeneracy_scan(const QuasiEnergySet& q);
double median_gap(const std::vector<QuasiPair>& pairs);

}  // namespace tfim
