#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace tfim {

struct GaussRule {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

// Gauss-Legendre rule via Newton iteration on P_n.
GaussRule gauss_legendre(int n);
const GaussRule& gl16();

// Composite Gauss-Legendre over [a, b] with `panels` equal panels.
template <class F>
double integrate_panels(F&& f, double a, double b, int panels, const GaussRule& rule = gl16()) {
    if (b == a || panels <= 0) return 0.0;
    const double hw = 0.5 * (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (2 * p + 1) * hw;
        double ps = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) ps += rule.w[i] * f(mid + hw * rule.x[i]);
        sum += ps * hw;
    }
    return sum;
}

// Composite nodes and weights over [a, b], for kernels reused at many parameters.
std::pair<std::vector<double>, std::vector<double>> panel_nodes(double a, double b, int panels,
                                                                const GaussRule& rule = gl16());

}  // namespace tfim
