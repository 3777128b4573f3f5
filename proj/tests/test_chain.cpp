#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "tfim/chain.hpp"
#include "tfim/errors.hpp"

using namespace tfim;

TEST_SUITE("chain") {

TEST_CASE("config validation") {
    CHECK_NOTHROW(make_config(8, 8, 1.0, 1e-2, 0.5));
    CHECK_THROWS_AS(make_config(10, 10, 1.0, 1e-2, 0.5), InvalidConfig);
    CHECK_THROWS_AS(make_config(8, 0, 1.0, 1e-2, 0.5), InvalidConfig);
    CHECK_THROWS_AS(make_config(8, 9, 1.0, 1e-2, 0.5), InvalidConfig);
    CHECK_THROWS_AS(make_config(8, 8, 1.0, 1e-2, 0.0), InvalidConfig);
    CHECK_THROWS_AS(make_config(8, 8, 1.0, 1e-2, -1.0), InvalidConfig);
    DriveConfig c;
    c.J = 2.0;
    CHECK_THROWS_AS(c.validate(), InvalidConfig);
}

TEST_CASE("drive amplitude and period") {
    auto c = make_config(8, 8, 1.0, 1e-2, 0.5);
    CHECK(c.v0() == doctest::Approx(-5e-3));
    CHECK(c.tau() == doctest::Approx(4.0 * kPi));
    CHECK(drive_signal(0.0, c) == 0.0);
    CHECK(drive_signal(-1.0, c) == 0.0);
    CHECK(drive_signal(1.0, c) == doctest::Approx(std::sin(0.5)));
}

TEST_CASE("antiperiodic grid") {
    auto g = build_kgrid(16);
    REQUIRE(g.size() == 8);
    for (std::size_t n = 0; n < g.size(); ++n) {
        CHECK(g[n].k == doctest::Approx((2.0 * n + 1.0) * kPi / 16.0));
        CHECK(g[n].eps0 == doctest::Approx(2.0 * std::sin(0.5 * g[n].k)));
        CHECK(g[n].k > 0.0);
        CHECK(g[n].k < kPi);
    }
    CHECK_THROWS_AS(build_kgrid(6), InvalidConfig);
}

TEST_CASE("ground pair is the lower eigenvector of the mode Hamiltonian") {
    for (double k : {0.1, 0.7, 1.3, 2.9}) {
        const double E = ek_static(k, 1.0), D = std::sin(k);
        Eigen::Matrix2cd H;
        H << E, cplx(0, -D), cplx(0, D), -E;
        auto p = ground_pair(k);
        Eigen::Vector2cd psi(p.v, p.u);
        Eigen::Vector2cd r = H * psi + dispersion(k) * psi;
        CHECK(r.norm() < 1e-14);
        CHECK(psi.norm() == doctest::Approx(1.0));
    }
}

TEST_CASE("ek_static keeps precision near k = 0") {
    const double k = 1e-9;
    CHECK(ek_static(k, 1.0) == doctest::Approx(0.5 * k * k).epsilon(1e-12));
}

TEST_CASE("Nambu matrix symmetries and spectrum") {
    const int L = 12;
    auto c = make_config(L, L, 1.0, 0.0, 1.0);
    auto nm = build_nambu(0.0, c);
    CHECK((nm.A - nm.A.transpose()).norm() == 0.0);
    CHECK((nm.B + nm.B.transpose()).norm() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(nm.full());
    std::vector<double> got(es.eigenvalues().data(), es.eigenvalues().data() + 2 * L);
    std::vector<double> want;
    for (const auto& m : build_kgrid(L))
        for (int s : {-1, 1})
            for (int rep = 0; rep < 2; ++rep) want.push_back(0.5 * s * m.eps0);  // +-k pairs
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 2 * L; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

TEST_CASE("field profile drives only the first l sites") {
    auto c = make_config(8, 3, 1.0, 0.1, 1.0);
    auto f = field_profile(0.5 * kPi, c);
    for (int j = 0; j < 3; ++j) CHECK(f[j] == doctest::Approx(1.1));
    for (int j = 3; j < 8; ++j) CHECK(f[j] == 1.0);
}

TEST_CASE("sparse generator equals twice the dense Nambu matrix") {
    auto c = make_config(8, 3, 1.0, 0.3, 1.0);
    auto f = field_profile(0.9, c);
    Eigen::MatrixXd H2 = 2.0 * build_nambu_fields(f, 1.0).full();
    Eigen::MatrixXcd X = Eigen::MatrixXcd::Random(16, 5), out;
    apply_generator(f, 1.0, X, out);
    CHECK((out - H2.cast<cplx>() * X).norm() < 1e-13);
}

}
