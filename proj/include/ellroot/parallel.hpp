#pragma once
// Ordered parallel map. Results land in input order whatever the schedule,
// so every scan is byte-identical across thread counts.
#include <omp.h>

#include <exception>
#include <numeric>
#include <utility>
#include <vector>

namespace ellroot {

enum class Exec { serial, parallel };

struct ExecConfig {
    Exec exec = Exec::parallel;
    int threads = 0;  // 0: OpenMP default
};

template <class F>
auto map_ordered(std::size_t n, const ExecConfig& cfg, F&& f) -> std::vector<decltype(f(std::size_t{0}))> {
    using R = decltype(f(std::size_t{0}));
    std::vector<R> out(n);
    if (cfg.exec == Exec::serial) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::exception_ptr> errs(n);
    int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        try {
            out[i] = f(static_cast<std::size_t>(i));
        } catch (...) {
            errs[i] = std::current_exception();
        }
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

inline long gcd_long(long a, long b) { return std::gcd(a, b); }

// coprime (u, v) with |u| <= box, 1 <= v <= box, ordered by (v, u)
inline std::vector<std::pair<long, long>> coprime_pairs(long box) {
    std::vector<std::pair<long, long>> out;
    for (long v = 1; v <= box; ++v)
        for (long u = -box; u <= box; ++u)
            if (std::gcd(u, v) == 1) out.emplace_back(u, v);
    return out;
}

}  // namespace ellroot
