#include "tfim/chain.hpp"

#include <cmath>
#include <string>

#include "tfim/errors.hpp"

namespace tfim {

void DriveConfig::validate() const {
    if (L <= 0 || L % 4 != 0)
        throw InvalidConfig("L must be a positive multiple of 4 (antiperiodic k-grid), got " +
                            std::to_string(L));
    if (l < 1 || l > L)
        throw InvalidConfig("driven length l must satisfy 1 <= l <= L, got l=" + std::to_string(l));
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw InvalidConfig("drive frequency omega must be positive");
    if (!std::isfinite(dh) || !std::isfinite(h))
        throw InvalidConfig("field parameters must be finite");
    if (J != 1.0)
        throw InvalidConfig("coupling J is fixed to 1");
}

DriveConfig make_config(int L, int l, double h, double dh, double omega) {
    DriveConfig cfg;
    cfg.L = L;
    cfg.l = l;
    cfg.h = h;
    cfg.dh = dh;
    cfg.omega = omega;
    cfg.validate();
    return cfg;
}

double dispersion(double k) { return 2.0 * std::sin(0.5 * k); }

double ek_static(double k, double h) {
    const double s = std::sin(0.5 * k);
    return 2.0 * s * s + (h - 1.0);
}

KMode make_kmode(double k) {
    KMode m;
    m.k = k;
    m.eps0 = dispersion(k);
    m.delta = std::sin(k);
    m.theta = std::atan2(m.delta, ek_static(k, 1.0));
    return m;
}

std::vector<KMode> build_kgrid(int L) {
    if (L <= 0 || L % 4 != 0)
        throw InvalidConfig("k-grid needs L to be a positive multiple of 4, got " + std::to_string(L));
    std::vector<KMode> grid;
    grid.reserve(L / 2);
    for (int n = 0; n < L / 2; ++n) grid.push_back(make_kmode((2 * n + 1) * kPi / L));
    return grid;
}

BdGPair ground_pair(double k) {
    const double theta = std::atan2(std::sin(k), ek_static(k, 1.0));
    return {cplx(0.0, std::sin(0.5 * theta)), cplx(std::cos(0.5 * theta), 0.0)};
}

double drive_signal(double t, const DriveConfig& cfg) {
    return t > 0.0 ? std::sin(cfg.omega * t) : 0.0;
}

std::vector<double> field_profile(double t, const DriveConfig& cfg) {
    std::vector<double> f(cfg.L, cfg.h);
    const double d = cfg.dh * drive_signal(t, cfg);
    for (int j = 0; j < cfg.l; ++j) f[j] += d;
    return f;
}

Eigen::MatrixXd NambuMatrix::full() const {
    const Eigen::Index n = A.rows();
    Eigen::MatrixXd H(2 * n, 2 * n);
    H << A, B, -B, -A;
    return H;
}

NambuMatrix build_nambu_fields(const std::vector<double>& fields, double J) {
    const int L = static_cast<int>(fields.size());
    NambuMatrix m;
    m.A = Eigen::MatrixXd::Zero(L, L);
    m.B = Eigen::MatrixXd::Zero(L, L);
    for (int j = 0; j < L; ++j) {
        m.A(j, j) = 0.5 * fields[j];
        const int jn = (j + 1) % L;
        // the bond closing the ring picks up the antiperiodic sign
        const double s = (jn == 0) ? -1.0 : 1.0;
        m.A(j, jn) += -0.25 * s * J;
        m.A(jn, j) += -0.25 * s * J;
        m.B(j, jn) += -0.25 * s * J;
        m.B(jn, j) += 0.25 * s * J;
    }
    return m;
}

NambuMatrix build_nambu(double t, const DriveConfig& cfg) {
    return build_nambu_fields(field_profile(t, cfg), cfg.J);
}

void apply_generator(const std::vector<double>& fields, double J,
                     const Eigen::MatrixXcd& X, Eigen::MatrixXcd& out) {
    const int L = static_cast<int>(fields.size());
    out.resize(X.rows(), X.cols());
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
        const cplx* xt = X.col(c).data();
        const cplx* xb = xt + L;
        cplx* ot = out.col(c).data();
        cplx* ob = ot + L;
        for (int j = 0; j < L; ++j) {
            ot[j] = fields[j] * xt[j];
            ob[j] = -fields[j] * xb[j];
        }
        for (int j = 0; j < L; ++j) {
            const int jn = (j + 1 == L) ? 0 : j + 1;
            const double g = (jn == 0 ? -0.5 : 0.5) * J;
            ot[j] -= g * (xt[jn] + xb[jn]);
            ot[jn] -= g * (xt[j] - xb[j]);
            ob[j] += g * (xt[jn] + xb[jn]);
            ob[jn] -= g * (xt[j] - xb[j]);
        }
    }
}

}  // namespace tfim
