#include "tfim/quadrature.hpp"

#include "tfim/chain.hpp"
#include "tfim/errors.hpp"

namespace tfim {

GaussRule gauss_legendre(int n) {
    if (n < 1) throw InvalidConfig("Gauss-Legendre order must be positive");
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

const GaussRule& gl16() {
    static const GaussRule rule = gauss_legendre(16);
    return rule;
}

std::pair<std::vector<double>, std::vector<double>> panel_nodes(double a, double b, int panels,
                                                                const GaussRule& rule) {
    std::vector<double> xs, ws;
    if (panels <= 0 || a == b) return {xs, ws};
    xs.reserve(panels * rule.x.size());
    ws.reserve(panels * rule.x.size());
    const double hw = 0.5 * (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (2 * p + 1) * hw;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            xs.push_back(mid + hw * rule.x[i]);
            ws.push_back(rule.w[i] * hw);
        }
    }
    return {xs, ws};
}

}  // namespace tfim
