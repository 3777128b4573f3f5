#include "tfim/analysis.hpp"

#include <cmath>

#include "tfim/errors.hpp"
#include "tfim/floquet_k.hpp"
#include "tfim/lrt.hpp"

namespace tfim {

PeriodFourier period_fourier(const std::vector<double>& series, int samples_per_period, int n, double omega,
                             int M) {
    if (samples_per_period <= 0) throw InvalidConfig("samples per period must be positive");
    if (n < 1) throw InvalidConfig("period index is 1-based");
    if (M < 0) throw InvalidConfig("harmonic cutoff must be non-negative");
    const long S = samples_per_period;
    const long first = (n - 1) * S, last = n * S;
    if (last >= static_cast<long>(series.size()))
        throw InvalidConfig("Fourier window exceeds the series length");
    const double tau = 2.0 * kPi / omega;
    const double h = tau / S;
    PeriodFourier pf;
    pf.n = n;
    pf.ac.assign(M, 0.0);
    pf.as.assign(M, 0.0);
    for (long i = first; i <= last; ++i) {
        const double w = (i == first || i == last) ? 0.5 : 1.0;
        const double a = w * series[i];
        pf.a0 += a;
        const double ph = 2.0 * kPi * static_cast<double>(i % S) / S;
        for (int m = 1; m <= M; ++m) {
            pf.ac[m - 1] += a * std::cos(m * ph);
            pf.as[m - 1] += a * std::sin(m * ph);
        }
    }
    pf.a0 *= h / tau;
    for (int m = 0; m < M; ++m) {
        pf.ac[m] *= 2.0 * h / tau;
        pf.as[m] *= 2.0 * h / tau;
    }
    return pf;
}

std::vector<PeriodFourier> all_periods(const std::vector<double>& series, int samples_per_period, double omega,
                                       int M) {
    std::vector<PeriodFourier> out;
    const long np = (static_cast<long>(series.size()) - 1) / samples_per_period;
    for (long n = 1; n <= np; ++n) out.push_back(period_fourier(series, samples_per_period, n, omega, M));
    return out;
}

PeriodFourier late_window(const std::vector<PeriodFourier>& pfs, double fraction) {
    if (pfs.empty()) throw InvalidConfig("no periods to average");
    const std::size_t count = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(fraction * pfs.size())));
    PeriodFourier avg;
    avg.n = pfs.back().n;
    avg.ac.assign(pfs.front().ac.size(), 0.0);
    avg.as.assign(pfs.front().as.size(), 0.0);
    for (std::size_t i = pfs.size() - count; i < pfs.size(); ++i) {
        avg.a0 += pfs[i].a0;
        for (std::size_t m = 0; m < avg.ac.size(); ++m) {
            avg.ac[m] += pfs[i].ac[m];
            avg.as[m] += pfs[i].as[m];
        }
    }
    avg.a0 /= count;
    for (std::size_t m = 0; m < avg.ac.size(); ++m) {
        avg.ac[m] /= count;
        avg.as[m] /= count;
    }
    return avg;
}

double absorption_rate(const PeriodFourier& pf, const DriveConfig& cfg) {
    return 0.5 * cfg.v0() * cfg.omega * pf.a1c();
}

TstarResult detect_tstar(const std::vector<double>& t, const std::vector<double>& e0,
                         const std::vector<double>& e_lrt, const DriveConfig& cfg, double threshold) {
    if (t.size() != e0.size() || t.size() != e_lrt.size() || t.empty())
        throw InvalidConfig("t*, energy and reference series must have equal nonzero length");
    const double thr = threshold > 0.0 ? threshold : cfg.dh * cfg.dh;
    TstarResult r;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (std::abs((e0[i] - e0[0]) - e_lrt[i]) > thr) {
            r.found = true;
            r.tstar = t[i];
            r.nstar = static_cast<int>(std::ceil(t[i] / cfg.tau() - 1e-12));
            return r;
        }
    }
    r.message = "no departure detected";
    return r;
}

TstarResult detect_tstar(const std::vector<double>& t, const std::vector<double>& e0, const DriveConfig& cfg,
                         double threshold) {
    std::vector<double> ref(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) ref[i] = lrt_energy(t[i], cfg);
    return detect_tstar(t, e0, ref, cfg, threshold);
}

RevivalTime revival_time(const DriveConfig& cfg) {
    const double ts = static_cast<double>(cfg.L - cfg.l);  // maximal group velocity is 1
    return {ts, ts / cfg.tau()};
}

std::vector<SweepRow> sweep_omega(const DriveConfig& base, const std::vector<double>& omegas,
                                  const SweepOptions& opt) {
    for (double w : omegas)
        if (w < opt.margin || std::abs(w - 4.0) < opt.margin)
            throw InvalidConfig("sweep frequencies must stay away from 0 and the band edge 4");
    std::vector<SweepRow> rows(omegas.size());
    const double meq = m_eq_finite(base.L);
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        DriveConfig cfg = base;
        cfg.omega = omegas[i];
        KspaceOptions ko{opt.steps_per_period, opt.samples_per_period};
        const KspaceTrace tr = magnetization_trace(cfg, opt.n_periods, ko);
        const PeriodFourier late = late_window(all_periods(tr.m, opt.samples_per_period, cfg.omega, 1),
                                               opt.late_fraction);
        rows[i] = {cfg.omega,
                   2.0 * late.a1s() / cfg.dh,
                   2.0 * late.a1c() / cfg.dh,
                   (late.a0 - meq) / cfg.dh,
                   chi_prime(cfg.omega),
                   chi_second(cfg.omega)};
    }
    return rows;
}

}  // namespace tfim
