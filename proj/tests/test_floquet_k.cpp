#include <doctest.h>

#include <cmath>

#include "tfim/errors.hpp"
#include "tfim/floquet_k.hpp"
#include "tfim/lrt.hpp"

using namespace tfim;
using doctest::Approx;

namespace {

double fold(double e, double w0) {
    double m = std::remainder(e, w0);
    return std::abs(m);
}

}  // namespace

TEST_SUITE("floquet_k") {

TEST_CASE("initial mode is the ground pair") {
    auto s = initial_mode(0.4);
    auto p = ground_pair(0.4);
    CHECK(s.v == p.v);
    CHECK(s.u == p.u);
    CHECK(s.norm() == Approx(1.0));
    CHECK(mode_magnetization(s) == Approx(2.0 * std::sin(0.5 * 0.4)));
    CHECK(mode_energy(s, 1.0) == Approx(-dispersion(0.4)));
}

TEST_CASE("undriven mode only acquires a phase") {
    auto c = make_config(16, 16, 1.0, 0.0, 1.0);
    auto s0 = initial_mode(1.1);
    auto s1 = propagate_mode(s0, c, 13.7);
    CHECK(std::abs(std::abs(std::conj(s0.v) * s1.v + std::conj(s0.u) * s1.u) - 1.0) < 1e-10);
    CHECK(mode_magnetization(s1) == Approx(mode_magnetization(s0)).epsilon(1e-10));
    CHECK_THROWS_AS(propagate_mode(s1, c, 1.0), InvalidConfig);
}

TEST_CASE("mode Hamiltonian carries the drive on the diagonal") {
    auto c = make_config(16, 16, 1.0, 0.1, 1.0);
    auto H0 = mode_hamiltonian_static(0.5, 1.0);
    auto H = mode_hamiltonian(0.5, 0.5 * kPi, c);
    CHECK((H - H0)(0, 0).real() == Approx(0.1));
    CHECK((H - H0)(1, 1).real() == Approx(-0.1));
    CHECK(std::abs((H - H0)(0, 1)) < 1e-15);
    CHECK((H - H.adjoint()).norm() < 1e-15);
}

TEST_CASE("undriven monodromy eigenphases") {
    auto c = make_config(16, 16, 1.0, 0.0, 0.7);
    for (double k : {0.3, 1.2, 2.5}) {
        auto fm = floquet_mode(k, c);
        CHECK(fm.mu > 0.0);
        CHECK(fm.mu <= 0.5 * c.omega + 1e-14);
        CHECK(fm.mu == Approx(fold(dispersion(k), c.omega)).epsilon(1e-9));
        CHECK(std::norm(fm.r_plus) + std::norm(fm.r_minus) == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("period propagators are unitary and consistent with the monodromy") {
    auto c = make_config(16, 16, 1.0, 0.05, 1.0);
    auto P = period_propagators(0.8, c, 1024, 64);
    REQUIRE(P.size() == 65);
    CHECK((P[0] - Eigen::Matrix2cd::Identity()).norm() < 1e-15);
    CHECK((P[64] - monodromy_mode(0.8, c, 1024)).norm() < 1e-12);
    for (const auto& U : P) CHECK((U.adjoint() * U - Eigen::Matrix2cd::Identity()).norm() < 1e-10);
    CHECK_THROWS_AS(period_propagators(0.8, c, 1000, 64), InvalidConfig);
}

TEST_CASE("undriven trace is stationary at the finite-L equilibrium") {
    auto c = make_config(32, 32, 1.0, 0.0, 0.5);
    auto tr = magnetization_trace(c, 3, {4096, 32});
    for (std::size_t i = 0; i < tr.m.size(); ++i) {
        CHECK(std::abs(tr.m[i] - m_eq_finite(32)) < 1e-9);
        CHECK(std::abs(tr.e0[i] - e0_finite(32)) < 1e-9);
    }
}

TEST_CASE("Floquet powers reproduce direct propagation") {
    auto c = make_config(16, 16, 1.0, 0.05, 0.9);
    const int S = 32;
    auto tr = magnetization_trace(c, 4, {2048, S});
    REQUIRE(tr.m.size() == 4 * S + 1);
    for (int i : {5, 40, 77, 128}) {
        const double t = i * c.tau() / S;
        double m = 0.0;
        for (const auto& km : build_kgrid(16)) m += mode_magnetization(propagate_mode(initial_mode(km.k), c, t, 2048));
        m /= 16.0;
        CHECK(tr.t[i] == Approx(t));
        CHECK(tr.m[i] == Approx(m).epsilon(1e-10));
    }
    // e equals e0 whenever the drive vanishes
    CHECK(tr.e[S] == Approx(tr.e0[S]).epsilon(1e-12));
}

TEST_CASE("subchain configs are rejected") {
    auto c = make_config(16, 4, 1.0, 0.05, 0.9);
    CHECK_THROWS_AS(magnetization_trace(c, 1), InvalidConfig);
}

TEST_CASE("diagonal part is periodic and the split is exact") {
    auto c = make_config(32, 32, 1.0, 1e-2, 0.5);
    const int S = 32;
    auto d = decompose_diag_offdiag(c, 4, {4096, S});
    REQUIRE(d.diag_one_period.size() == S + 1);
    for (std::size_t i = 0; i < d.m.size(); ++i) CHECK(d.diag[i] + d.offdiag[i] == Approx(d.m[i]).epsilon(1e-13));
    CHECK(d.diag[3] == Approx(d.diag[3 + 2 * S]).epsilon(1e-12));
    CHECK(d.diag_one_period.front() == Approx(d.diag_one_period.back()).epsilon(1e-12));
}

TEST_CASE("off-diagonal amplitude follows linear response away from resonance") {
    auto c = make_config(64, 64, 1.0, 1e-3, 2.0);
    const double k = kPi / 3.0 + 0.1;
    auto fg = fg_extraction(k, c.tau(), c);
    CHECK(fg.f == Approx(f_lrt(k, c)).epsilon(1e-2));
    CHECK(std::abs(fg.g) < 1e-2 * std::abs(fg.f));
}

}
