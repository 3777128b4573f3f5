#include "tfim/ed.hpp"

#include <bit>
#include <cmath>

#include "tfim/errors.hpp"

namespace tfim {

namespace {

constexpr int kMaxEdSites = 12;
const cplx I1(0.0, 1.0);

}  // namespace

EdChain::EdChain(int L) : L_(L) {
    if (L < 2 || L > kMaxEdSites)
        throw InvalidConfig("exact diagonalization supports 2 <= L <= 12, got " + std::to_string(L));
    const std::uint32_t full = 1u << L;
    index_.assign(full, -1);
    for (std::uint32_t s = 0; s < full; ++s)
        if (std::popcount(s) % 2 == 0) {
            index_[s] = static_cast<std::int32_t>(states_.size());
            states_.push_back(s);
        }
    bond_to_.resize(states_.size() * L);
    for (std::size_t a = 0; a < states_.size(); ++a)
        for (int j = 0; j < L; ++j) {
            const std::uint32_t f = states_[a] ^ (1u << j) ^ (1u << ((j + 1) % L));
            bond_to_[a * L + j] = index_[f];
        }
}

void EdChain::apply(const std::vector<double>& fields, double J, const Eigen::VectorXcd& x,
                    Eigen::VectorXcd& out) const {
    const std::size_t n = dim();
    out.setZero(n);
    for (std::size_t a = 0; a < n; ++a) {
        const std::uint32_t s = states_[a];
        double diag = 0.0;
        for (int j = 0; j < L_; ++j) diag += fields[j] * ((s >> j) & 1u ? -1.0 : 1.0);
        out(a) += -0.5 * diag * x(a);
        const cplx xa = x(a);
        for (int j = 0; j < L_; ++j) out(bond_to_[a * L_ + j]) += -0.5 * J * xa;
    }
}

Eigen::MatrixXd EdChain::dense(const std::vector<double>& fields, double J) const {
    const std::size_t n = dim();
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        const std::uint32_t s = states_[a];
        double diag = 0.0;
        for (int j = 0; j < L_; ++j) diag += fields[j] * ((s >> j) & 1u ? -1.0 : 1.0);
        H(a, a) += -0.5 * diag;
        for (int j = 0; j < L_; ++j) H(bond_to_[a * L_ + j], a) += -0.5 * J;
    }
    return H;
}

std::vector<double> EdChain::sigma_x(const Eigen::VectorXcd& psi) const {
    std::vector<double> sx(L_, 0.0);
    for (std::size_t a = 0; a < dim(); ++a) {
        const double p = std::norm(psi(a));
        for (int j = 0; j < L_; ++j) sx[j] += ((states_[a] >> j) & 1u) ? -p : p;
    }
    return sx;
}

double EdChain::parity(const Eigen::VectorXcd& psi) const {
    double p = 0.0;
    for (std::size_t a = 0; a < dim(); ++a) p += (std::popcount(states_[a]) % 2 ? -1.0 : 1.0) * std::norm(psi(a));
    return p;
}

EdGround ed_ground(const EdChain& chain, double h, double J) {
    const Eigen::MatrixXd H = chain.dense(std::vector<double>(chain.L(), h), J);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success) throw NumericalError("ED ground-state solve failed");
    if (es.eigenvalues()(1) - es.eigenvalues()(0) < 1e-10)
        throw DegeneracyError("ED ground state is degenerate in the even sector");
    return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

EdSeries ed_evolve(const DriveConfig& cfg, int n_periods, const EdOptions& opt) {
    cfg.validate();
    if (cfg.L > kMaxEdSites) throw InvalidConfig("exact diagonalization is limited to L <= 12");
    if (n_periods < 1) throw InvalidConfig("need at least one period");
    const int S = opt.samples_per_period;
    if (S <= 0 || opt.steps_per_period % S != 0)
        throw InvalidConfig("steps per period must be a positive multiple of samples per period");
    const EdChain chain(cfg.L);
    const EdGround gs = ed_ground(chain, cfg.h, cfg.J);
    const std::vector<double> h0(cfg.L, cfg.h);
    const double shift = gs.energy;

    Eigen::VectorXcd psi = gs.state.cast<cplx>();
    Eigen::VectorXcd k1, k2, k3, k4, tmp, Hx;
    auto rhs = [&](double t, const Eigen::VectorXcd& x, Eigen::VectorXcd& out) {
        chain.apply(field_profile(t, cfg), cfg.J, x, out);
        out -= shift * x;
        out *= -I1;
    };
    auto record = [&](EdSeries& s, double t) {
        const auto sx = chain.sigma_x(psi);
        double m = 0.0, ml = 0.0;
        for (int j = 0; j < cfg.L; ++j) {
            m += sx[j];
            if (j < cfg.l) ml += sx[j];
        }
        chain.apply(h0, cfg.J, psi, Hx);
        s.t.push_back(t);
        s.m.push_back(m / cfg.L);
        s.Ml.push_back(ml);
        s.e0.push_back(psi.dot(Hx).real() / cfg.L);
        s.norm.push_back(psi.norm());
        s.parity.push_back(chain.parity(psi));
    };

    EdSeries out;
    const int stride = opt.steps_per_period / S;
    const double dt = cfg.tau() / opt.steps_per_period;
    record(out, 0.0);
    const long steps = static_cast<long>(n_periods) * opt.steps_per_period;
    for (long i = 0; i < steps; ++i) {
        const double t = i * dt;
        rhs(t, psi, k1);
        tmp = psi + (0.5 * dt) * k1;
        rhs(t + 0.5 * dt, tmp, k2);
        tmp = psi + (0.5 * dt) * k2;
        rhs(t + 0.5 * dt, tmp, k3);
        tmp = psi + dt * k3;
        rhs(t + dt, tmp, k4);
        psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if ((i + 1) % stride == 0) {
            record(out, (i + 1) * dt);
            if (std::abs(out.norm.back() - 1.0) > 1e-8)
                throw NumericalError("ED state norm drift exceeds 1e-8");
        }
    }
    return out;
}

std::vector<LehmannLine> ed_susceptibility(int L, int l, double cutoff) {
    if (l < 1 || l > L) throw InvalidConfig("subchain length out of range");
    const EdChain chain(L);
    const Eigen::MatrixXd H = chain.dense(std::vector<double>(L, 1.0), 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success) throw NumericalError("ED diagonalization failed");
    const Eigen::VectorXd g = es.eigenvectors().col(0);
    Eigen::VectorXd Ag(chain.dim());
    for (std::size_t a = 0; a < chain.dim(); ++a) {
        double d = 0.0;
        for (int j = 0; j < l; ++j) d += ((chain.states()[a] >> j) & 1u) ? -1.0 : 1.0;
        Ag(a) = d * g(a);
    }
    const Eigen::VectorXd amps = es.eigenvectors().transpose() * Ag;
    std::vector<LehmannLine> lines;
    for (Eigen::Index n = 1; n < amps.size(); ++n) {
        const double w = amps(n) * amps(n);
        if (w > cutoff) lines.push_back({es.eigenvalues()(n) - es.eigenvalues()(0), w});
    }
    return lines;
}

}  // namespace tfim
