#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace tfim {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

struct DriveConfig {
    int L = 64;
    int l = 64;          // driven sites are 0..l-1
    double h = 1.0;
    double dh = 1e-2;    // drive amplitude
    double omega = 0.5;  // drive angular frequency
    double J = 1.0;

    double tau() const { return 2.0 * kPi / omega; }
    double v0() const { return -0.5 * dh; }
    bool uniform() const { return l == L; }

    // Throws InvalidConfig on L % 4 != 0, l outside [1, L], omega <= 0, J != 1.
    void validate() const;
};

// Convenience constructor; validates.
DriveConfig make_config(int L, int l, double h, double dh, double omega);

struct KMode {
    double k;
    double eps0;   // 2 sin(k/2)
    double delta;  // sin k
    double theta;  // tan(theta) = sin k / (1 - cos k)
};

struct BdGPair {
    cplx v;  // amplitude on the doubly occupied state
    cplx u;  // amplitude on the empty state
};

std::vector<KMode> build_kgrid(int L);
KMode make_kmode(double k);
double dispersion(double k);
BdGPair ground_pair(double k);

// E_k = h - cos k, written as 2 sin^2(k/2) + (h - 1) to keep precision near k = 0.
double ek_static(double k, double h);

// Drive factor sin(omega t) for t > 0, zero otherwise.
double drive_signal(double t, const DriveConfig& cfg);
std::vector<double> field_profile(double t, const DriveConfig& cfg);

// H = Psi^dag Hm Psi with Psi = (c_1..c_L, c_1^dag..c_L^dag).
struct NambuMatrix {
    Eigen::MatrixXd A;  // symmetric
    Eigen::MatrixXd B;  // antisymmetric
    Eigen::MatrixXd full() const;
    int size() const { return static_cast<int>(A.rows()); }
};

NambuMatrix build_nambu(double t, const DriveConfig& cfg);
NambuMatrix build_nambu_fields(const std::vector<double>& fields, double J);

// Applies the BdG generator 2*Hm(t) to the 2L x n block X using the sparse
// nearest-neighbour structure. fields has length L.
void apply_generator(const std::vector<double>& fields, double J,
                     const Eigen::MatrixXcd& X, Eigen::MatrixXcd& out);

}  // namespace tfim
