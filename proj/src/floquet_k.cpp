#include "tfim/floquet_k.hpp"

#include <cmath>

#include "tfim/errors.hpp"
#include "parallel.hpp"

namespace tfim {

namespace {

const cplx I1(0.0, 1.0);

void require_uniform(const DriveConfig& cfg) {
    cfg.validate();
    if (!cfg.uniform()) throw InvalidConfig("k-space solver needs a uniform drive (l = L)");
}

double field_at(double t, const DriveConfig& cfg) { return cfg.dh * drive_signal(t, cfg); }

// One RK4 step of dY/dt = -i H(t) Y for Y with two rows.
template <class M>
void rk4_step(double k, double t, double dt, const DriveConfig& cfg, M& y) {
    const double e0 = ek_static(k, cfg.h);
    const double d = std::sin(k);
    auto rhs = [&](double tt, const M& x) {
        const double e = e0 + field_at(tt, cfg);
        M out = x;
        out.row(0) = -I1 * (e * x.row(0) - I1 * d * x.row(1));
        out.row(1) = -I1 * (I1 * d * x.row(0) - e * x.row(1));
        return out;
    };
    const M k1 = rhs(t, y);
    const M k2 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k1);
    const M k3 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k2);
    const M k4 = rhs(t + dt, y + dt * k3);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double unitarity_defect(const Eigen::Matrix2cd& U) {
    return (U * U.adjoint() - Eigen::Matrix2cd::Identity()).norm();
}

double fold(double mu, double w0) {
    // into (-w0/2, w0/2]
    double r = std::remainder(mu, w0);
    if (r <= -0.5 * w0) r += w0;
    return r;
}

struct ModeTables {
    std::vector<Eigen::Matrix2cd> U;   // samples + 1 propagators over one period
    std::vector<Eigen::Vector2cd> psi_n;  // state at the start of each period
};

ModeTables build_tables(double k, const DriveConfig& cfg, const KspaceOptions& opt, int n_periods) {
    ModeTables tb;
    tb.U = period_propagators(k, cfg, opt.steps_per_period, opt.samples_per_period);
    const Eigen::Matrix2cd& M = tb.U.back();
    if (unitarity_defect(M) > 1e-10)
        throw NumericalError("per-mode monodromy lost unitarity; increase steps per period");
    const ModeState g = initial_mode(k);
    Eigen::Vector2cd psi(g.v, g.u);
    tb.psi_n.reserve(n_periods);
    for (int n = 0; n < n_periods; ++n) {
        tb.psi_n.push_back(psi);
        psi = M * psi;
    }
    return tb;
}

}  // namespace

ModeState initial_mode(double k) {
    const BdGPair p = ground_pair(k);
    return {k, p.v, p.u, 0.0};
}

Eigen::Matrix2cd mode_hamiltonian_static(double k, double h) {
    const double e = ek_static(k, h);
    const double d = std::sin(k);
    Eigen::Matrix2cd H;
    H << e, -I1 * d, I1 * d, -e;
    return H;
}

Eigen::Matrix2cd mode_hamiltonian(double k, double t, const DriveConfig& cfg) {
    Eigen::Matrix2cd H = mode_hamiltonian_static(k, cfg.h);
    const double f = field_at(t, cfg);
    H(0, 0) += f;
    H(1, 1) -= f;
    return H;
}

double mode_magnetization(const ModeState& s) { return 2.0 * (std::norm(s.u) - std::norm(s.v)); }

double mode_energy(const ModeState& s, double h) {
    const Eigen::Vector2cd x(s.v, s.u);
    return (x.adjoint() * mode_hamiltonian_static(s.k, h) * x)(0, 0).real();
}

ModeState propagate_mode(const ModeState& s, const DriveConfig& cfg, double t1, int steps_per_period) {
    cfg.validate();
    if (t1 < s.t) throw InvalidConfig("propagate_mode needs t1 >= t0");
    if (steps_per_period <= 0) throw InvalidConfig("steps per period must be positive");
    const double span = t1 - s.t;
    const double dt0 = cfg.tau() / steps_per_period;
    const long n = span > 0.0 ? static_cast<long>(std::ceil(span / dt0 - 1e-9)) : 0;
    Eigen::Matrix<cplx, 2, 1> y(s.v, s.u);
    const double n0 = s.norm();
    if (n > 0) {
        const double dt = span / n;
        for (long i = 0; i < n; ++i) rk4_step(s.k, s.t + i * dt, dt, cfg, y);
    }
    ModeState out{s.k, y(0), y(1), t1};
    if (std::abs(out.norm() - n0) > 1e-8)
        throw NumericalError("mode norm drift exceeds 1e-8; increase steps per period");
    return out;
}

std::vector<Eigen::Matrix2cd> period_propagators(double k, const DriveConfig& cfg, int steps_per_period,
                                                 int samples) {
    if (samples <= 0 || steps_per_period <= 0 || steps_per_period % samples != 0)
        throw InvalidConfig("steps per period must be a positive multiple of samples per period");
    const int stride = steps_per_period / samples;
    const double dt = cfg.tau() / steps_per_period;
    std::vector<Eigen::Matrix2cd> out;
    out.reserve(samples + 1);
    Eigen::Matrix2cd U = Eigen::Matrix2cd::Identity();
    out.push_back(U);
    for (int i = 0; i < steps_per_period; ++i) {
        rk4_step(k, i * dt, dt, cfg, U);
        if ((i + 1) % stride == 0) out.push_back(U);
    }
    return out;
}

Eigen::Matrix2cd monodromy_mode(double k, const DriveConfig& cfg, int steps_per_period) {
    cfg.validate();
    const auto tabs = period_propagators(k, cfg, steps_per_period, 1);
    const Eigen::Matrix2cd& M = tabs.back();
    if (unitarity_defect(M) > 1e-10) throw NumericalError("monodromy is not unitary to 1e-10");
    return M;
}

FloquetMode floquet_mode(double k, const DriveConfig& cfg, const KspaceOptions& opt) {
    cfg.validate();
    const auto tabs = period_propagators(k, cfg, opt.steps_per_period, opt.samples_per_period);
    const Eigen::Matrix2cd& M = tabs.back();
    if (unitarity_defect(M) > 1e-10) throw NumericalError("monodromy is not unitary to 1e-10");
    const double tau = cfg.tau(), w0 = cfg.omega;

    // (M - M^dag)/2i has eigenvalues sin(phase); distinct unless the phases coincide
    const Eigen::Matrix2cd K = (M - M.adjoint()) / (2.0 * I1);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(K);
    Eigen::Vector2cd w[2] = {es.eigenvectors().col(0), es.eigenvectors().col(1)};
    cplx lam[2];
    double mu[2];
    for (int i = 0; i < 2; ++i) {
        lam[i] = (w[i].adjoint() * M * w[i])(0, 0);
        mu[i] = fold(-std::arg(lam[i]) / tau, w0);
    }
    if (std::abs(lam[0] - lam[1]) < 1e-12)
        throw DegeneracyError("Floquet eigenphases coincide; modes cannot be separated");
    const int ip = (mu[0] > mu[1]) ? 0 : 1;
    const int im = 1 - ip;

    FloquetMode fm;
    fm.k = k;
    fm.eps0 = dispersion(k);
    fm.omega = w0;
    fm.monodromy = M;
    double mup = mu[ip];
    if (mup <= 0.0) mup += w0;  // representative in (0, w0/2]
    fm.mu = mup;
    const double mum = -mup;
    const ModeState g = initial_mode(k);
    const Eigen::Vector2cd psi0(g.v, g.u);
    fm.r_plus = w[ip].dot(psi0);
    fm.r_minus = w[im].dot(psi0);
    const int S = opt.samples_per_period;
    fm.phi_plus.reserve(S + 1);
    fm.phi_minus.reserve(S + 1);
    for (int j = 0; j <= S; ++j) {
        const double s = tau * j / S;
        fm.phi_plus.push_back(std::exp(I1 * (mup * s)) * (tabs[j] * w[ip]));
        fm.phi_minus.push_back(std::exp(I1 * (mum * s)) * (tabs[j] * w[im]));
    }
    return fm;
}

KspaceTrace magnetization_trace(const DriveConfig& cfg, int n_periods, const KspaceOptions& opt) {
    require_uniform(cfg);
    if (n_periods < 1) throw InvalidConfig("need at least one period");
    const auto grid = build_kgrid(cfg.L);
    const int nk = static_cast<int>(grid.size());
    std::vector<ModeTables> tabs(nk);
    detail::ExceptionTrap trap;
#pragma omp parallel for schedule(dynamic)
    for (int q = 0; q < nk; ++q) trap.run([&] { tabs[q] = build_tables(grid[q].k, cfg, opt, n_periods); });
    trap.rethrow();

    std::vector<Eigen::Matrix2cd> H0(nk);
    for (int q = 0; q < nk; ++q) H0[q] = mode_hamiltonian_static(grid[q].k, cfg.h);

    const int S = opt.samples_per_period;
    const long total = static_cast<long>(n_periods) * S + 1;
    KspaceTrace tr;
    tr.t.resize(total);
    tr.m.resize(total);
    tr.e0.resize(total);
    tr.e.resize(total);
    const double tau = cfg.tau();
#pragma omp parallel for schedule(static)
    for (long i = 0; i < total; ++i) {
        const int n = static_cast<int>(std::min<long>(i / S, n_periods - 1));
        const int j = static_cast<int>(i - static_cast<long>(n) * S);
        const double t = (static_cast<double>(n) + static_cast<double>(j) / S) * tau;
        double m = 0.0, e0 = 0.0;
        for (int q = 0; q < nk; ++q) {
            const Eigen::Vector2cd psi = tabs[q].U[j] * tabs[q].psi_n[n];
            m += 2.0 * (std::norm(psi(1)) - std::norm(psi(0)));
            e0 += (psi.adjoint() * H0[q] * psi)(0, 0).real();
        }
        tr.t[i] = t;
        tr.m[i] = m / cfg.L;
        tr.e0[i] = e0 / cfg.L;
        tr.e[i] = tr.e0[i] + cfg.v0() * drive_signal(t, cfg) * tr.m[i];
    }
    return tr;
}

KspaceTrace energy_per_site_trace(const DriveConfig& cfg, int n_periods, const KspaceOptions& opt) {
    return magnetization_trace(cfg, n_periods, opt);
}

DiagOffDiag decompose_diag_offdiag(const DriveConfig& cfg, int n_periods, const KspaceOptions& opt) {
    require_uniform(cfg);
    const auto grid = build_kgrid(cfg.L);
    const int nk = static_cast<int>(grid.size());
    std::vector<FloquetMode> fms(nk);
    detail::ExceptionTrap trap;
#pragma omp parallel for schedule(dynamic)
    for (int q = 0; q < nk; ++q) trap.run([&] { fms[q] = floquet_mode(grid[q].k, cfg, opt); });
    trap.rethrow();

    const int S = opt.samples_per_period;
    const long total = static_cast<long>(n_periods) * S + 1;
    const double tau = cfg.tau();
    const Eigen::Vector2d mdiag(-2.0, 2.0);
    auto mel = [&](const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
        return std::conj(a(0)) * mdiag(0) * b(0) + std::conj(a(1)) * mdiag(1) * b(1);
    };

    DiagOffDiag out;
    out.diag_one_period.assign(S + 1, 0.0);
    for (int j = 0; j <= S; ++j) {
        double d = 0.0;
        for (int q = 0; q < nk; ++q) {
            const auto& f = fms[q];
            d += std::norm(f.r_plus) * mel(f.phi_plus[j], f.phi_plus[j]).real() +
                 std::norm(f.r_minus) * mel(f.phi_minus[j], f.phi_minus[j]).real();
        }
        out.diag_one_period[j] = d / cfg.L;
    }
    out.t.resize(total);
    out.m.resize(total);
    out.diag.resize(total);
    out.offdiag.resize(total);
    for (long i = 0; i < total; ++i) {
        const int n = static_cast<int>(std::min<long>(i / S, n_periods - 1));
        const int j = static_cast<int>(i - static_cast<long>(n) * S);
        const double t = (static_cast<double>(n) + static_cast<double>(j) / S) * tau;
        double off = 0.0, full = 0.0;
        for (int q = 0; q < nk; ++q) {
            const auto& f = fms[q];
            const cplx ep = std::exp(-I1 * (f.mu * t));
            const cplx em = std::exp(I1 * (f.mu * t));
            const Eigen::Vector2cd psi = f.r_plus * ep * f.phi_plus[j] + f.r_minus * em * f.phi_minus[j];
            full += 2.0 * (std::norm(psi(1)) - std::norm(psi(0)));
            const cplx c = std::conj(f.r_plus) * f.r_minus * mel(f.phi_plus[j], f.phi_minus[j]);
            off += 2.0 * (c * std::exp(I1 * (2.0 * f.mu * t))).real();
        }
        out.t[i] = t;
        out.diag[i] = out.diag_one_period[j];
        out.offdiag[i] = off / cfg.L;
        out.m[i] = full / cfg.L;
    }
    return out;
}

FgValue fg_from_mode(const FloquetMode& fm, double t, const DriveConfig& cfg, int steps_per_period) {
    const double tau = cfg.tau();
    double s = std::fmod(t, tau);
    if (s < 0.0) s += tau;
    // modes at s by direct propagation from the s = 0 samples
    auto at = [&](const Eigen::Vector2cd& w0, double mu) {
        if (s == 0.0) return Eigen::Vector2cd(w0);
        ModeState st{fm.k, w0(0), w0(1), 0.0};
        st = propagate_mode(st, cfg, s, steps_per_period);
        return Eigen::Vector2cd(std::exp(I1 * (mu * s)) * Eigen::Vector2cd(st.v, st.u));
    };
    const bool plus_dominant = std::norm(fm.r_plus) >= std::norm(fm.r_minus);
    const double mu_a = plus_dominant ? fm.mu : -fm.mu;
    const double mu_b = -mu_a;
    const Eigen::Vector2cd pa = at(plus_dominant ? fm.phi_plus[0] : fm.phi_minus[0], mu_a);
    const Eigen::Vector2cd pb = at(plus_dominant ? fm.phi_minus[0] : fm.phi_plus[0], mu_b);
    const cplx ra = plus_dominant ? fm.r_plus : fm.r_minus;
    const cplx rb = plus_dominant ? fm.r_minus : fm.r_plus;
    const cplx C = std::conj(ra) * rb * (std::conj(pa(0)) * (-2.0) * pb(0) + std::conj(pa(1)) * 2.0 * pb(1));
    // shift the winding of e^{i(mu_a - mu_b)t} onto -2 eps0 by a periodic factor
    const double n = std::round((mu_a - mu_b + 2.0 * fm.eps0) / cfg.omega);
    const cplx G = C * std::exp(I1 * (n * cfg.omega * t));
    return {G.real(), G.imag()};
}

FgValue fg_extraction(double k, double t, const DriveConfig& cfg, const KspaceOptions& opt) {
    return fg_from_mode(floquet_mode(k, cfg, opt), t, cfg, opt.steps_per_period);
}

double f_lrt(double k, const DriveConfig& cfg) {
    const double c = std::cos(0.5 * k);
    const double om = 2.0 * dispersion(k);
    return 2.0 * cfg.omega * cfg.dh * c * c / (cfg.omega * cfg.omega - om * om);
}

}  // namespace tfim
