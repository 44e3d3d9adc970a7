// Timing comparison of the serial reference kernels against the OpenMP lanes.
// Prints one row per kernel: serial ms, parallel ms, speedup, and whether the
// two lanes produced identical results.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "solkms/campaigns.hpp"
#include "solkms/measures.hpp"

using namespace solkms;

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn) {
    const auto t0 = Clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void row(const std::string& name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", name.c_str(), serial_ms,
                parallel_ms, serial_ms / parallel_ms, identical ? "identical" : "DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both lanes run serially\n");
#endif
    std::printf("%-28s %13s %13s %8s\n", "kernel", "serial", "parallel", "speedup");

    {
        const CircleMeasure m = rotate_measure(make_mr(2.0), 0.3);
        SubinvGrid grid;
        grid.n_t = 2048;
        grid.n_s = 2048;
        SubinvReport rs, rp;
        const double ts =
            time_ms([&] { rs = check_subinvariance(m, 2.0, grid, 1e-9, ExecPolicy::Serial); });
        const double tp =
            time_ms([&] { rp = check_subinvariance(m, 2.0, grid, 1e-9, ExecPolicy::Parallel); });
        row("subinvariance grid", ts, tp, rs.worst_violation == rp.worst_violation);
    }
    {
        const CircleMeasure a = make_mr(1.0);
        const CircleMeasure b = make_mnr(10, 1.0);
        double vs = 0.0, vp = 0.0;
        const double ts = time_ms([&] { vs = l1_distance(a, b, 65536, ExecPolicy::Serial); });
        const double tp = time_ms([&] { vp = l1_distance(a, b, 65536, ExecPolicy::Parallel); });
        row("l1 quadrature", ts, tp, vs == vp);
    }
    {
        CampaignConfig cfg;
        cfg.samples = 4000;
        cfg.depth = 4;
        cfg.n_states = 20;
        Report rs, rp;
        const double ts = time_ms([&] {
            cfg.policy = ExecPolicy::Serial;
            rs = kms_identity_campaign(cfg);
        });
        const double tp = time_ms([&] {
            cfg.policy = ExecPolicy::Parallel;
            rp = kms_identity_campaign(cfg);
        });
        row("KMS identity campaign", ts, tp, rs.max_residual == rp.max_residual);
    }
    {
        CampaignConfig cfg;
        cfg.samples = 2000;
        cfg.depth = 4;
        cfg.n_states = 12;
        Report rs, rp;
        const double ts = time_ms([&] {
            cfg.policy = ExecPolicy::Serial;
            rs = positivity_campaign(cfg);
        });
        const double tp = time_ms([&] {
            cfg.policy = ExecPolicy::Parallel;
            rp = positivity_campaign(cfg);
        });
        row("positivity campaign", ts, tp, rs.max_residual == rp.max_residual);
    }
    return 0;
}
