// Benchmark of the OpenMP-parallel sweep kernels against their serial
// reference twins. Every pair is also checked for identical numeric output:
// speed may differ, numbers may not.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "nevlab/foliation.hpp"
#include "nevlab/measure.hpp"
#include "nevlab/pick.hpp"
#include "nevlab/quotient.hpp"
#include "nevlab/sweep.hpp"

using namespace nevlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds(std::function<void()> fn) {
    auto t0 = Clock::now();
    fn();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(const std::string& name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-28s %10.3fs %12.3fs %8.2fx %s\n", name.c_str(), serial_s, parallel_s,
                serial_s / parallel_s, identical ? "identical" : "DIFFER");
}

template <typename T>
bool same(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

} // namespace

int main() {
    const int jobs = static_cast<int>(std::thread::hardware_concurrency());
    std::printf("workers for the parallel column: %d\n", jobs);
    std::printf("%-28s %11s %13s %9s %s\n", "kernel", "serial", "parallel", "speedup",
                "outputs");
    bool all_identical = true;

    PickFunction dust = PickFunction::from_nevanlinna(0.0, 0.0, Measure::cantor());
    PickFunction band = PickFunction::from_nevanlinna(
        0.0, 0.0,
        Measure::from_components({Measure::PolynomialDensity{{{-1.0, 1.0, {0.5, 0, 0, 0}}}}}));
    Gauge one = Gauge::constant(1.0);
    Gauge id = Gauge::identity();
    Gauge square = Gauge::power_law(1.0, 2.0);

    {
        auto grid = dyadic_eps_grid(0.125, 14);
        QuotientSeries s, p;
        double ts = seconds([&] {
            s = build_series_serial(dust, one, square, 0.0, grid, QuotientMethod::Direct, 1e-8);
        });
        double tp = seconds([&] {
            p = build_series(dust, one, square, 0.0, grid, QuotientMethod::Direct, 1e-8, jobs);
        });
        bool ok = same(s.values, p.values);
        all_identical = all_identical && ok;
        report("quotient series (direct)", ts, tp, ok);
    }
    {
        auto grid = dyadic_eps_grid(0.125, 18);
        QuotientSeries s, p;
        double ts = seconds([&] {
            s = build_series_serial(dust, one, square, 0.0, grid, QuotientMethod::Kernel, 1e-8);
        });
        double tp = seconds([&] {
            p = build_series(dust, one, square, 0.0, grid, QuotientMethod::Kernel, 1e-8, jobs);
        });
        bool ok = same(s.values, p.values);
        all_identical = all_identical && ok;
        report("quotient series (kernel)", ts, tp, ok);
    }
    {
        std::vector<double> diag, off;
        for (int i = 0; i < 40; ++i) {
            diag.push_back(0.25 * ((i * 7) % 5 - 2));
            if (i) off.push_back(0.8 + 0.01 * (i % 7));
        }
        Eigen::MatrixXd A = jacobi_matrix(diag, off);
        Eigen::VectorXd phi = Eigen::VectorXd::Zero(A.rows());
        phi[0] = 1.0;
        PickFunction chain = PickFunction::from_resolvent(std::move(A), std::move(phi));
        std::vector<double> taus;
        for (int i = 0; i <= 400; ++i) taus.push_back(-4.0 + 0.02 * i);

        std::vector<SpectralVerdict> s, p;
        double ts = seconds([&] { s = classify_many_serial(chain, taus); });
        double tp = seconds([&] { p = classify_many(chain, taus, jobs); });
        bool ok = s.size() == p.size();
        for (std::size_t i = 0; ok && i < s.size(); ++i)
            ok = s[i].cls == p[i].cls &&
                 same(s[i].julia_quotient_trace, p[i].julia_quotient_trace);
        all_identical = all_identical && ok;
        report("spectral classification", ts, tp, ok);
    }
    {
        std::vector<double> betas;
        for (double b = 2.0; b <= 1024.0; b *= 2.0) betas.push_back(b);
        HorocycleProfile s, p;
        double ts =
            seconds([&] { s = horocyclic_profile(band, id, 1.0, 0.0, betas, 4096, 0, 1); });
        double tp =
            seconds([&] { p = horocyclic_profile(band, id, 1.0, 0.0, betas, 4096, 0, jobs); });
        bool ok = same(s.sup_deviation, p.sup_deviation);
        all_identical = all_identical && ok;
        report("horocyclic profile", ts, tp, ok);
    }

    std::printf("%s\n", all_identical ? "all parallel outputs identical to serial"
                                      : "PARALLEL/SERIAL MISMATCH");
    return all_identical ? 0 : 1;
}
