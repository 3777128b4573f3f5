#include "tfim/bdg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tfim/errors.hpp"

namespace tfim {

namespace {

const cplx I1(0.0, 1.0);

// One RK4 step of i dW/dt = 2 Hm(t) W.
struct Stepper {
    const DriveConfig& cfg;
    Eigen::MatrixXcd k1, k2, k3, k4, tmp;

    explicit Stepper(const DriveConfig& c) : cfg(c) {}

    void rhs(double t, const Eigen::MatrixXcd& x, Eigen::MatrixXcd& out) {
        apply_generator(field_profile(t, cfg), cfg.J, x, out);
        out *= -I1;
    }

    void step(double t, double dt, Eigen::MatrixXcd& W) {
        rhs(t, W, k1);
        tmp = W + (0.5 * dt) * k1;
        rhs(t + 0.5 * dt, tmp, k2);
        tmp = W + (0.5 * dt) * k2;
        rhs(t + 0.5 * dt, tmp, k3);
        tmp = W + dt * k3;
        rhs(t + dt, tmp, k4);
        W += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
};

double fold(double mu, double w0) {
    double r = std::remainder(mu, w0);
    if (r <= -0.5 * w0) r += w0;
    return r;
}

std::vector<int> ph_partners(const std::vector<double>& mu, double w0) {
    const int n = static_cast<int>(mu.size());
    std::vector<int> p(n, -1);
    for (int i = 0; i < n; ++i) {
        const double target = fold(-mu[i], w0);
        double best = 1e300;
        for (int j = 0; j < n; ++j) {
            double d = std::abs(fold(mu[j] - target, w0));
            if (d < best) {
                best = d;
                p[i] = j;
            }
        }
    }
    return p;
}

}  // namespace

Eigen::MatrixXcd BdGFrame::half() const {
    Eigen::MatrixXcd W(2 * L(), L());
    W << U, V;
    return W;
}

Eigen::MatrixXcd BdGFrame::full() const {
    const int n = L();
    Eigen::MatrixXcd F(2 * n, 2 * n);
    F << U, V.conjugate(), V, U.conjugate();
    return F;
}

double BdGFrame::unitarity_defect() const {
    const Eigen::MatrixXcd F = full();
    return (F.adjoint() * F - Eigen::MatrixXcd::Identity(F.cols(), F.cols())).cwiseAbs().maxCoeff();
}

BdGFrame initial_frame(const DriveConfig& cfg) {
    cfg.validate();
    const Eigen::MatrixXd H = build_nambu(0.0, cfg).full();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success) throw NumericalError("Nambu diagonalization failed");
    const int L = cfg.L;
    BdGFrame f;
    f.t = 0.0;
    f.U = es.eigenvectors().block(0, L, L, L).cast<cplx>();
    f.V = es.eigenvectors().block(L, L, L, L).cast<cplx>();
    f.eps.assign(es.eigenvalues().data() + L, es.eigenvalues().data() + 2 * L);
    if (f.eps.front() < 1e-12)
        throw DegeneracyError("Nambu spectrum has a near-zero mode; quasiparticle vacuum is ambiguous");
    return f;
}

double ground_energy(const BdGFrame& f0) {
    return -std::accumulate(f0.eps.begin(), f0.eps.end(), 0.0);
}

BdGFrame propagate_bdg(const BdGFrame& frame, const DriveConfig& cfg, double t1, int steps_per_period) {
    cfg.validate();
    if (t1 < frame.t) throw InvalidConfig("propagate_bdg needs t1 >= t0");
    if (steps_per_period <= 0) throw InvalidConfig("steps per period must be positive");
    const double span = t1 - frame.t;
    const double dt0 = cfg.tau() / steps_per_period;
    const long n = span > 0.0 ? static_cast<long>(std::ceil(span / dt0 - 1e-9)) : 0;
    Eigen::MatrixXcd W = frame.half();
    Stepper st(cfg);
    if (n > 0) {
        const double dt = span / n;
        for (long i = 0; i < n; ++i) st.step(frame.t + i * dt, dt, W);
    }
    BdGFrame out;
    out.t = t1;
    out.U = W.topRows(cfg.L);
    out.V = W.bottomRows(cfg.L);
    out.eps = frame.eps;
    if (out.unitarity_defect() > 1e-7)
        throw NumericalError("BdG frame lost unitarity beyond 1e-7; increase steps per period");
    return out;
}

Eigen::MatrixXcd PeriodTable::full(int j) const {
    const Eigen::Index n = X[j].rows();
    Eigen::MatrixXcd P(2 * n, 2 * n);
    P << X[j], Y[j].conjugate(), Y[j], X[j].conjugate();
    return P;
}

PeriodTable period_table(const DriveConfig& cfg, int steps_per_period, int samples) {
    cfg.validate();
    if (samples <= 0 || steps_per_period <= 0 || steps_per_period % samples != 0)
        throw InvalidConfig("steps per period must be a positive multiple of samples per period");
    const int L = cfg.L;
    const int stride = steps_per_period / samples;
    const double dt = cfg.tau() / steps_per_period;
    Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(2 * L, L);
    W.topRows(L).setIdentity();
    PeriodTable tb;
    tb.X.reserve(samples + 1);
    tb.Y.reserve(samples + 1);
    tb.X.push_back(W.topRows(L));
    tb.Y.push_back(W.bottomRows(L));
    Stepper st(cfg);
    for (int i = 0; i < steps_per_period; ++i) {
        st.step(i * dt, dt, W);
        if ((i + 1) % stride == 0) {
            tb.X.push_back(W.topRows(L));
            tb.Y.push_back(W.bottomRows(L));
        }
    }
    const Eigen::MatrixXcd P = tb.full(samples);
    const double defect =
        (P.adjoint() * P - Eigen::MatrixXcd::Identity(2 * L, 2 * L)).cwiseAbs().maxCoeff();
    if (defect > 1e-7) throw NumericalError("monodromy lost unitarity beyond 1e-7");
    return tb;
}

Eigen::MatrixXcd monodromy(const DriveConfig& cfg, int steps_per_period) {
    return period_table(cfg, steps_per_period, 1).full(1);
}

QuasiEnergySet quasienergies(const Eigen::MatrixXcd& P, double omega, bool cayley) {
    const Eigen::Index n = P.rows();
    const double tau = 2.0 * kPi / omega;
    QuasiEnergySet q;
    q.omega = omega;
    const Eigen::MatrixXcd Id = Eigen::MatrixXcd::Identity(n, n);
    if (cayley) {
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(Id + P);
        if (lu.rcond() < 1e-13)
            throw ZoneEdgeError("monodromy has an eigenvalue at -1 (zone edge); shift the quasi-energy "
                                "branch or use the direct route");
        Eigen::MatrixXcd A = -I1 * lu.solve(Id - P);
        q.hermiticity_defect = (A - A.adjoint()).cwiseAbs().maxCoeff() / std::max(1.0, A.cwiseAbs().maxCoeff());
        A = 0.5 * (A + A.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
        if (es.info() != Eigen::Success) throw NumericalError("Cayley eigen-solve failed");
        const auto& a = es.eigenvalues();
        q.mu.resize(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::abs(a(i)) > 1e10)
                throw ZoneEdgeError("quasi-energy at the zone edge; Cayley transform is singular");
            q.mu[i] = omega / kPi * std::atan(a(i));
        }
        q.vectors = es.eigenvectors();
    } else {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(P);
        if (es.info() != Eigen::Success) throw NumericalError("monodromy eigen-solve failed");
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::vector<double> mu(n);
        for (Eigen::Index i = 0; i < n; ++i) mu[i] = fold(-std::arg(es.eigenvalues()(i)) / tau, omega);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return mu[a] < mu[b]; });
        q.mu.resize(n);
        q.vectors.resize(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            q.mu[i] = mu[idx[i]];
            q.vectors.col(i) = es.eigenvectors().col(idx[i]).normalized();
        }
    }
    q.partner = ph_partners(q.mu, omega);
    return q;
}

SiteMagnetization magnetization_sites(const BdGFrame& frame, int l, const std::vector<double>& occupations) {
    const int L = frame.L();
    if (l < 1 || l > L) throw InvalidConfig("subchain length out of range");
    if (!occupations.empty() && static_cast<int>(occupations.size()) != L)
        throw InvalidConfig("occupations must have one entry per quasiparticle");
    SiteMagnetization s;
    s.mj.resize(L);
    for (int j = 0; j < L; ++j) {
        double n = 0.0;
        for (int a = 0; a < L; ++a) {
            const double occ = occupations.empty() ? 0.0 : occupations[a];
            n += std::norm(frame.U(j, a)) * occ + std::norm(frame.V(j, a)) * (1.0 - occ);
        }
        s.mj[j] = 1.0 - 2.0 * n;
    }
    s.m = std::accumulate(s.mj.begin(), s.mj.end(), 0.0) / L;
    s.Ml = std::accumulate(s.mj.begin(), s.mj.begin() + l, 0.0);
    return s;
}

double bdg_energy(const BdGFrame& frame, const std::vector<double>& fields, double J) {
    const int L = frame.L();
    Eigen::MatrixXcd Z(2 * L, L);
    Z << frame.V.conjugate(), frame.U.conjugate();
    Eigen::MatrixXcd GZ;
    apply_generator(fields, J, Z, GZ);
    return 0.5 * (Z.adjoint() * GZ).trace().real();
}

BdgRun bdg_run(const DriveConfig& cfg, int n_periods, const BdGOptions& opt) {
    cfg.validate();
    if (n_periods < 1) throw InvalidConfig("need at least one period");
    const int L = cfg.L, l = cfg.l, S = opt.samples_per_period;
    const BdGFrame f0 = initial_frame(cfg);
    const PeriodTable tb = period_table(cfg, opt.steps_per_period, S);
    const std::vector<double> static_fields(L, cfg.h);
    const double tau = cfg.tau();

    BdgRun run;
    const long total = static_cast<long>(n_periods) * S + 1;
    run.t.resize(total);
    run.Ml.resize(total);
    run.m.resize(total);
    Eigen::MatrixXcd U = f0.U, V = f0.V;
    const bool whole = (l == L);
    auto sample = [&](long i, int j, double t) {
        const int rows = whole ? L : l;
        const Eigen::MatrixXcd Vr = tb.Y[j].topRows(rows) * U + tb.X[j].topRows(rows).conjugate() * V;
        double Ml = 0.0;
        for (int r = 0; r < l; ++r) Ml += 1.0 - 2.0 * Vr.row(r).squaredNorm();
        run.t[i] = t;
        run.Ml[i] = Ml;
        if (whole) {
            run.m[i] = Ml / L;
        } else {
            const Eigen::MatrixXcd Vf = tb.Y[j] * U + tb.X[j].conjugate() * V;
            run.m[i] = 1.0 - 2.0 * Vf.squaredNorm() / L;
        }
    };
    auto boundary_energy = [&](int n) {
        BdGFrame fr;
        fr.U = U;
        fr.V = V;
        const double t = n * tau;
        run.e0_boundary.push_back(bdg_energy(fr, static_fields, cfg.J) / L);
        run.e_boundary.push_back(bdg_energy(fr, field_profile(t, cfg), cfg.J) / L);
    };
    for (int n = 0; n < n_periods; ++n) {
        boundary_energy(n);
        for (int j = 0; j < S; ++j) {
            const long i = static_cast<long>(n) * S + j;
            sample(i, j, (n + static_cast<double>(j) / S) * tau);
        }
        const Eigen::MatrixXcd Un = tb.X[S] * U + tb.Y[S].conjugate() * V;
        const Eigen::MatrixXcd Vn = tb.Y[S] * U + tb.X[S].conjugate() * V;
        U = Un;
        V = Vn;
        if (!opt.skip_unitarity_check) {
            const double d = (U.adjoint() * U + V.adjoint() * V - Eigen::MatrixXcd::Identity(L, L))
                                 .cwiseAbs()
                                 .maxCoeff();
            if (d > 1e-7) throw NumericalError("BdG frame lost unitarity beyond 1e-7");
        }
    }
    boundary_energy(n_periods);
    {
        // last point t = n_periods * tau from the advanced frame
        const long i = total - 1;
        double Ml = 0.0;
        for (int r = 0; r < l; ++r) Ml += 1.0 - 2.0 * V.row(r).squaredNorm();
        run.t[i] = n_periods * tau;
        run.Ml[i] = Ml;
        run.m[i] = 1.0 - 2.0 * V.squaredNorm() / L;
    }
    return run;
}

LocalFloquet floquet_decompose_local(const DriveConfig& cfg, int n_periods, const BdGOptions& opt, int bins,
                                     double t0) {
    cfg.validate();
    if (bins < 1) throw InvalidConfig("histogram needs at least one bin");
    const int L = cfg.L, l = cfg.l, S = opt.samples_per_period;
    const double tau = cfg.tau(), w0 = cfg.omega;
    const BdGFrame f0 = initial_frame(cfg);
    const PeriodTable tb = period_table(cfg, opt.steps_per_period, S);

    LocalFloquet out;
    out.qset = quasienergies(tb.full(S), w0, true);
    const Eigen::MatrixXcd& Wf = out.qset.vectors;
    const int n2 = 2 * L;
    const Eigen::MatrixXcd c = Wf.adjoint() * f0.half();
    const Eigen::MatrixXcd rho = c * c.adjoint();
    const Eigen::VectorXd mu = Eigen::Map<const Eigen::VectorXd>(out.qset.mu.data(), n2);

    // Phi_j: V-part rows of the periodic modes at s_j, l x 2L
    std::vector<Eigen::MatrixXcd> Phi(S + 1);
    for (int j = 0; j <= S; ++j) {
        Eigen::MatrixXcd rowsP(l, n2);
        rowsP << tb.Y[j].topRows(l), tb.X[j].topRows(l).conjugate();
        Phi[j] = rowsP * Wf;
        const double s = tau * j / S;
        for (int b = 0; b < n2; ++b) Phi[j].col(b) *= std::exp(I1 * (mu(b) * s));
    }
    const Eigen::VectorXd rho_diag = rho.diagonal().real();

    const long total = static_cast<long>(n_periods) * S + 1;
    out.t.resize(total);
    out.Ml.resize(total);
    out.diag.resize(total);
    out.offdiag.resize(total);
    Eigen::MatrixXcd U = f0.U, V = f0.V;
    for (long i = 0; i < total; ++i) {
        const int n = static_cast<int>(std::min<long>(i / S, n_periods - 1));
        const int j = static_cast<int>(i - static_cast<long>(n) * S);
        const double t = (n + static_cast<double>(j) / S) * tau;
        if (j == 0 && i > 0 && i < total - 1) {
            const Eigen::MatrixXcd Un = tb.X[S] * U + tb.Y[S].conjugate() * V;
            const Eigen::MatrixXcd Vn = tb.Y[S] * U + tb.X[S].conjugate() * V;
            U = Un;
            V = Vn;
        }
        const Eigen::MatrixXcd Vr = tb.Y[j].topRows(l) * U + tb.X[j].topRows(l).conjugate() * V;
        double Ml = 0.0;
        for (int r = 0; r < l; ++r) Ml += 1.0 - 2.0 * Vr.row(r).squaredNorm();

        Eigen::MatrixXcd PD = Phi[j];
        for (int b = 0; b < n2; ++b) PD.col(b) *= std::exp(-I1 * (mu(b) * t));
        const Eigen::MatrixXcd PR = PD * rho;
        double all = 0.0, dg = 0.0;
        for (int r = 0; r < l; ++r) {
            all += PR.row(r).dot(PD.row(r)).real();
            for (int b = 0; b < n2; ++b) dg += std::norm(Phi[j](r, b)) * rho_diag(b);
        }
        out.t[i] = t;
        out.Ml[i] = Ml;
        out.diag[i] = l - 2.0 * dg;
        out.offdiag[i] = -2.0 * (all - dg);
    }

    // off-diagonal spectral weights at t0, binned by mu_b - mu_b'
    const int j0 = static_cast<int>(std::lround(std::fmod(t0, tau) / tau * S)) % S;
    const Eigen::MatrixXcd& P0 = Phi[j0];
    out.hist_omega.resize(bins);
    out.hist_re.assign(bins, 0.0);
    out.hist_im.assign(bins, 0.0);
    const double width = 2.0 * w0 / bins;
    for (int b = 0; b < bins; ++b) out.hist_omega[b] = -w0 + (b + 0.5) * width;
    for (int a = 0; a < n2; ++a)
        for (int b = 0; b < n2; ++b) {
            if (a == b) continue;
            cplx w = 0.0;
            for (int r = 0; r < l; ++r) w += P0(r, a) * std::conj(P0(r, b));
            w *= -2.0 * rho(a, b);
            const double om = mu(a) - mu(b);
            int bin = static_cast<int>(std::ceil((om + w0) / width)) - 1;
            bin = std::clamp(bin, 0, bins - 1);
            out.hist_re[bin] += w.real();
            out.hist_im[bin] += w.imag();
        }
    return out;
}

std::vector<QuasiPair> quasidegeneracy_scan(const QuasiEnergySet& q) {
    const int n = static_cast<int>(q.mu.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return q.mu[a] < q.mu[b]; });
    struct Gap {
        int i;
        double g;
    };
    std::vector<Gap> gaps;
    for (int i = 0; i < n; ++i) {
        const int a = order[i], b = order[(i + 1) % n];
        double g = q.mu[b] - q.mu[a];
        if (i + 1 == n) g += q.omega;
        gaps.push_back({i, g});
    }
    std::stable_sort(gaps.begin(), gaps.end(), [](const Gap& x, const Gap& y) { return x.g < y.g; });
    std::vector<char> used(n, 0);
    std::vector<QuasiPair> pairs;
    for (const auto& g : gaps) {
        const int ia = g.i, ib = (g.i + 1) % n;
        if (used[ia] || used[ib] || ia == ib) continue;
        used[ia] = used[ib] = 1;
        pairs.push_back({order[ia], order[ib], g.g});
    }
    return pairs;
}

double median_gap(const std::vector<QuasiPair>& pairs) {
    if (pairs.empty()) return 0.0;
    std::vector<double> g;
    for (const auto& p : pairs) g.push_back(p.gap);
    std::sort(g.begin(), g.end());
    const std::size_t m = g.size() / 2;
    return g.size() % 2 ? g[m] : 0.5 * (g[m - 1] + g[m]);
}

}  // namespace tfim
