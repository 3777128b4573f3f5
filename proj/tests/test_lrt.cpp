#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tfim/errors.hpp"
#include "tfim/lrt.hpp"

using namespace tfim;
using doctest::Approx;

namespace {

// Closed form of the reactive part, used as an independent oracle.
double chi1_closed(double w) {
    w = std::abs(w);
    if (w < 4.0) {
        const double b = std::sqrt(1.0 - w * w / 16.0);
        return 2.0 / kPi * (1.0 - 0.5 * b * std::log((1.0 + b) / (1.0 - b)));
    }
    if (w > 4.0) {
        const double be = std::sqrt(w * w / 16.0 - 1.0);
        return 2.0 / kPi * (1.0 - be * std::atan(1.0 / be));
    }
    return 2.0 / kPi;
}

// Reference values from tests/oracles/lrt_oracles.py (mpmath, 30 digits).
struct Ref3 {
    double a, b, c;
};

}  // namespace

TEST_SUITE("lrt") {

TEST_CASE("chi'' closed form") {
    CHECK(std::abs(chi_second(2.0) + std::sqrt(3.0) / 2.0) < 1e-15);
    CHECK(std::abs(chi_second(0.5) + std::sqrt(63.0 / 64.0)) < 1e-15);
    CHECK(chi_second(4.0) == 0.0);
    CHECK(chi_second(5.0) == 0.0);
    CHECK(chi_second(-4.5) == 0.0);
    CHECK(chi_second(-1.0) == -chi_second(1.0));
}

TEST_CASE("equilibrium densities") {
    CHECK(m_eq_thermo() == Approx(2.0 / kPi));
    CHECK(std::abs(m_eq_finite(4096) - 2.0 / kPi) < 1e-6);
    CHECK(std::abs(e0_finite(4096) + 2.0 / kPi) < 1e-6);
    // antiperiodic sum: 2/L sum sin(k/2) = 1 / (L sin(pi/(2L)))
    for (int L : {8, 64, 256}) CHECK(m_eq_finite(L) == Approx(1.0 / (L * std::sin(kPi / (2.0 * L)))).epsilon(1e-13));
}

TEST_CASE("chi' against the mpmath principal value") {
    CHECK(chi_prime(0.5) == Approx(-1.112139137764257).epsilon(1e-10));
    CHECK(chi_prime(2.0) == Approx(-0.089457170260984121).epsilon(1e-10));
    CHECK(chi_prime(3.0) == Approx(0.30170378486613318).epsilon(1e-10));
    CHECK(chi_prime(5.0) == Approx(0.19386891941628152).epsilon(1e-10));
}

TEST_CASE("chi' against the closed form over the band") {
    for (double w = 0.05; w < 7.0; w += 0.173) CHECK(std::abs(chi_prime(w) - chi1_closed(w)) < 1e-9);
    CHECK(chi_prime(4.0) == Approx(2.0 / kPi).epsilon(1e-10));
    CHECK(chi_prime(-1.3) == Approx(chi_prime(1.3)));
}

TEST_CASE("chi' diverges logarithmically at zero frequency") {
    CHECK_THROWS_AS(chi_prime(0.0), LogDivergence);
    const double a = chi_prime(1e-3), b = chi_prime(1e-4);
    // the log slope is (2/pi) per e-fold
    CHECK((a - b) / std::log(10.0) == Approx(2.0 / kPi).epsilon(1e-3));
}

TEST_CASE("spectrum table") {
    auto s = lrt_spectrum({0.5, 5.0}, true);
    REQUIRE(s.size() == 2);
    CHECK(s[0].chi2 == chi_second(0.5));
    CHECK(s[1].chi1 == Approx(chi_prime(5.0)));
    auto t = lrt_spectrum({1.0}, false);
    CHECK(std::isnan(t[0].chi1));
}

TEST_CASE("switch-on transient against mpmath") {
    const double v0 = -0.005;
    const double ts[3] = {0.7, 5.0, 30.0};
    const std::vector<std::pair<double, Ref3>> refs = {
        {0.5, {0.0031672347364959564, 0.0010812824111751878, 0.00021080240765498101}},
        {2.0, {0.0017934808007245698, 0.00034165921582077163, 5.5008699538440065e-5}},
        {5.0, {0.0017658391514408218, 5.1788061941202926e-5, 1.4542272624437824e-5}},
    };
    for (const auto& [w0, r] : refs) {
        TransientKernel K(w0, 40.0);
        const double want[3] = {r.a, r.b, r.c};
        for (int i = 0; i < 3; ++i) {
            CHECK(K.transient(ts[i], v0) == Approx(want[i]).epsilon(1e-9));
            CHECK(lrt_transient(w0, ts[i], v0) == Approx(want[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("linear response starts from equilibrium") {
    for (double w0 : {0.5, 2.0, 5.0}) {
        auto c = make_config(64, 64, 1.0, 1e-2, w0);
        auto tr = lrt_trace(c, {0.0, 1e-6});
        CHECK(tr.m[0] == Approx(m_eq_thermo()).epsilon(1e-12));
        CHECK(std::abs(tr.m[1] - tr.m[0]) < 1e-7);
        CHECK(tr.out_of_phase == Approx(-c.v0() * chi_second(w0)));
        CHECK(tr.in_phase == Approx(c.v0() * chi_prime(w0)));
    }
}

TEST_CASE("transient decays and relaxation is its negative") {
    const double v0 = -0.005, w0 = 0.5, tau = 4.0 * kPi;
    TransientKernel K(w0, 200.0 * tau);
    CHECK(std::abs(K.transient(200.0 * tau, v0)) < 0.05 * std::abs(v0 * chi_second(w0)));
    double early = 0.0, late = 0.0;
    for (int i = 0; i <= 400; ++i) {
        early = std::max(early, std::abs(K.transient(i * 10.0 * tau / 400.0, v0)));
        late = std::max(late, std::abs(K.transient(100.0 * tau + i * 100.0 * tau / 400.0, v0)));
    }
    CHECK(late < early);
    for (double t : {0.0, 0.3, 3.0, 40.0}) CHECK(K.relaxation(t, v0) == -K.transient(t, v0));
    CHECK(lrt_relaxation(2.0, 3.0, v0) == -lrt_transient(2.0, 3.0, v0));
}

TEST_CASE("uniform path rejects subchain configs") {
    auto c = make_config(64, 32, 1.0, 1e-2, 1.0);
    CHECK_THROWS_AS(lrt_trace(c, {1.0}), InvalidConfig);
}

TEST_CASE("finite-size response approaches the thermodynamic one") {
    auto c = make_config(4096, 4096, 1.0, 1e-2, 0.5);
    CHECK(lrt_finite_size(0.0, c) == 0.0);
    for (int i = 1; i <= 40; ++i) {
        const double t = 0.25 * i * c.tau();
        const double thermo = lrt_magnetization(t, c) - m_eq_thermo();
        CHECK(std::abs(lrt_finite_size(t, c) - thermo) < 1e-4);
    }
}

TEST_CASE("resonant finite-size term grows linearly") {
    auto grid = build_kgrid(16);
    const KMode& km = grid[3];
    auto c = make_config(16, 16, 1.0, 1e-2, 2.0 * km.eps0);
    // at whole periods only the secular part survives
    const double a = lrt_finite_size_term(km, 3.0 * c.tau(), c);
    const double b = lrt_finite_size_term(km, 6.0 * c.tau(), c);
    CHECK(std::abs(b / a - 2.0) < 1e-10);
    const double cc = std::cos(0.5 * km.k);
    CHECK(a == Approx(-2.0 * c.dh / c.L * cc * cc * 3.0 * c.tau()).epsilon(1e-12));
}

TEST_CASE("second-order energy against mpmath") {
    auto c = make_config(64, 64, 1.0, 1e-2, 0.5);
    CHECK(lrt_energy(10.0, c) == Approx(6.9851410571161653e-5).epsilon(1e-9));
    CHECK(lrt_energy(50.0, c) == Approx(0.00030363941788341888).epsilon(1e-9));
    CHECK(lrt_energy(0.0, c) == 0.0);
}

TEST_CASE("absorption rate formula") {
    auto c = make_config(64, 64, 1.0, 1e-2, 0.5);
    CHECK(lrt_energy_rate(c) == Approx(6.2010e-6).epsilon(1e-4));
    auto c2 = make_config(64, 64, 1.0, 2e-2, 0.5);
    CHECK(lrt_energy_rate(c2) / lrt_energy_rate(c) == Approx(4.0));
}

TEST_CASE("chi'' is odd and non-positive for positive frequency") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-6.0, 6.0);
    for (int i = 0; i < 1000; ++i) {
        const double w = U(rng);
        CHECK(chi_second(-w) == -chi_second(w));
        if (w > 0.0) CHECK(chi_second(w) <= 0.0);
    }
}

TEST_CASE("energy grows at the absorption rate") {
    auto c = make_config(64, 64, 1.0, 1e-2, 0.5);
    const double W = lrt_energy_rate(c);
    CHECK(W > 0.0);
    // average slope over whole periods at late times
    const double t1 = 40.0 * c.tau(), t2 = 60.0 * c.tau();
    const double slope = (lrt_energy(t2, c) - lrt_energy(t1, c)) / (t2 - t1);
    CHECK(slope == Approx(W).epsilon(1e-2));
    CHECK(lrt_energy_rate(make_config(64, 64, 1.0, 1e-2, 5.0)) == 0.0);
}

TEST_CASE("finite-L energy tracks the thermodynamic curve before revivals") {
    auto c = make_config(2048, 2048, 1.0, 1e-2, 0.5);
    CHECK(lrt_energy_finite(30.0, c) == Approx(lrt_energy(30.0, c)).epsilon(1e-3));
}

TEST_CASE("local spectral function against mpmath") {
    const std::vector<std::pair<int, std::pair<double, double>>> refs = {
        {0, {-0.33417339625826388, -0.53857187503450995}},
        {1, {-0.27339130300347504, -0.10219081190561216}},
        {3, {0.010054002570582321, -0.044493221813675291}},
    };
    for (const auto& [j, r] : refs) {
        CHECK(chi_local_spectral(j, 1.0) == Approx(r.first).epsilon(1e-9));
        CHECK(chi_local_spectral(j, 3.0) == Approx(r.second).epsilon(1e-9));
        CHECK(chi_local_spectral(-j, 1.0) == Approx(r.first).epsilon(1e-12));
    }
    CHECK(chi_local_spectral(0, -1.0) == -chi_local_spectral(0, 1.0));
    CHECK(chi_local_spectral(2, 4.2) == 0.0);
}

TEST_CASE("local spectral functions sum to the uniform one") {
    // sum over all separations of chi''_{j0} is chi'' of the magnetization density
    for (double w : {0.5, 1.0, 2.5}) {
        double s = chi_local_spectral(0, w);
        for (int j = 1; j < 400; ++j) s += 2.0 * chi_local_spectral(j, w);
        CHECK(s == Approx(chi_second(w)).epsilon(5e-3));
    }
}

TEST_CASE("subchain spectral function") {
    CHECK(chi_subchain_spectral(2, 1.0) == Approx(-1.2151293985234778).epsilon(1e-9));
    CHECK(chi_subchain_spectral(2, 3.0) == Approx(-1.2815253738802442).epsilon(1e-9));
    CHECK(chi_subchain_spectral(4, 1.0) == Approx(-3.4755514686560945).epsilon(1e-9));
    CHECK(chi_subchain_spectral(4, 3.0) == Approx(-2.5872929312706454).epsilon(1e-9));
    CHECK(chi_subchain_spectral(1, 1.3) == Approx(chi_local_spectral(0, 1.3)).epsilon(1e-12));
    CHECK_THROWS_AS(chi_subchain_spectral(0, 1.0), InvalidConfig);
    // per-site value approaches the uniform density for long subchains
    CHECK(chi_subchain_spectral(200, 1.0) / 200.0 == Approx(chi_second(1.0)).epsilon(5e-3));
}

TEST_CASE("subchain chi' is the Kramers-Kronig partner") {
    // l = 1: compare with a plain excision of the local spectral function
    const double w0 = 1.0;
    auto f = [&](double x) { return chi_subchain_spectral(1, x) * 2.0 * x / (x * x - w0 * w0); };
    double pv = 0.0;
    const int n = 200000;
    const double r = 1e-3;
    for (auto [a, b] : {std::pair{0.0, w0 - r}, std::pair{w0 + r, 4.0}}) {
        const double h = (b - a) / n;
        for (int i = 0; i < n; ++i) pv += f(a + (i + 0.5) * h) * h;
    }
    pv /= kPi;
    CHECK(chi_subchain_prime(1, w0) == Approx(pv).epsilon(2e-3));
    CHECK_THROWS_AS(chi_subchain_prime(1, 0.0), LogDivergence);
    CHECK(chi_subchain_prime(64, 1.0) / 64.0 == Approx(chi_prime(1.0)).epsilon(2e-2));
}

TEST_CASE("subchain response reduces to the uniform trace for l = L") {
    for (double w0 : {0.5, 2.0, 5.0}) {
        auto c = make_config(64, 64, 1.0, 1e-2, w0);
        std::vector<double> ts{0.3, 7.4, 21.6, 57.1};
        auto r = lrt_subchain_response(c, ts);
        auto tr = lrt_trace(c, ts);
        for (std::size_t i = 0; i < ts.size(); ++i)
            CHECK(r[i] / 64.0 == Approx(tr.m[i] - tr.m_eq).epsilon(1e-8));
    }
}

TEST_CASE("subchain absorption rate") {
    auto c = make_config(64, 1, 1.0, 1e-2, 1.0);
    CHECK(lrt_energy_rate_subchain(c) == Approx(-(1.0 / 8.0) * 1e-4 * chi_local_spectral(0, 1.0)));
}

}
