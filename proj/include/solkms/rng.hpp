#pragma once

#include <cstdint>

namespace solkms {

// Deterministic generator used by every randomized campaign. splitmix64 core,
// so that (seed, case_id) -> stream is reproducible across compilers and
// standard libraries; campaigns derive one stream per case and may therefore
// run cases in any order.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Independent per-case stream: hash the pair (seed, case_id).
    static Rng for_case(std::uint64_t seed, std::uint64_t case_id) {
        Rng mix(seed ^ (0x9e3779b97f4a7c15ULL * (case_id + 1)));
        mix.next_u64();
        mix.next_u64();
        return mix;
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    int int_in(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

  private:
    std::uint64_t state_;
};

}  // namespace solkms
