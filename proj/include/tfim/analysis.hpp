#pragma once

#include <string>
#include <vector>

#include "tfim/chain.hpp"

namespace tfim {

struct PeriodFourier {
    int n = 0;
    double a0 = 0.0;
    std::vector<double> ac;  // ac[m-1] = cosine coefficient of harmonic m
    std::vector<double> as;  // as[m-1] = sine coefficient of harmonic m
    double a1c() const { return ac.empty() ? 0.0 : ac[0]; }
    double a1s() const { return as.empty() ? 0.0 : as[0]; }
};

// Trapezoidal coefficients over the window [(n-1) tau, n tau] of a series sampled at
// t_i = i tau / samples_per_period starting at t = 0. n is 1-based.
PeriodFourier period_fourier(const std::vector<double>& series, int samples_per_period, int n,
                             double omega, int M = 1);

std::vector<PeriodFourier> all_periods(const std::vector<double>& series, int samples_per_period,
                                       double omega, int M = 1);

// Mean of coefficients over the last `fraction` of the periods.
PeriodFourier late_window(const std::vector<PeriodFourier>& pfs, double fraction = 0.2);

// W_n = v0 w0 A1c / 2 for the driven observable (M_l or L m).
double absorption_rate(const PeriodFourier& pf, const DriveConfig& cfg);

struct TstarResult {
    bool found = false;
    double tstar = 0.0;
    int nstar = 0;
    std::string message;
};

// First sample where |(e0(t) - e0(0)) - e_lrt(t)| exceeds threshold (defaults to dh^2).
TstarResult detect_tstar(const std::vector<double>& t, const std::vector<double>& e0,
                         const std::vector<double>& e_lrt, const DriveConfig& cfg, double threshold = -1.0);

// Same, computing the thermodynamic LRT energy curve at the sample times.
TstarResult detect_tstar(const std::vector<double>& t, const std::vector<double>& e0, const DriveConfig& cfg,
                         double threshold = -1.0);

struct RevivalTime {
    double tstar;
    double periods;
};
RevivalTime revival_time(const DriveConfig& cfg);

struct SweepOptions {
    int n_periods = 200;
    int steps_per_period = 4096;
    int samples_per_period = 64;
    double late_fraction = 0.2;
    double margin = 1e-3;  // distance kept from 0 and the band edge
};

struct SweepRow {
    double omega;
    double sine2;      // 2 m1s / dh, late window
    double cosine2;    // 2 m1c / dh, late window
    double mean_shift; // (m0 - m_eq(L)) / dh, late window
    double chi1;
    double chi2;
};

std::vector<SweepRow> sweep_omega(const DriveConfig& base, const std::vector<double>& omegas,
                                  const SweepOptions& opt = {});

}  // namespace tfim
