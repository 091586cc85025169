#ifndef COMET_STATS_INTERNAL_HPP
#define COMET_STATS_INTERNAL_HPP

#include <algorithm>
#include <vector>

#include "comet/engine.hpp"

namespace comet::detail {

inline double percentile(const std::vector<double>& sorted, double p) {
    if (sorted.empty())
        return 0.0;
    double rank = p * (sorted.size() - 1);
    size_t lo = static_cast<size_t>(rank);
    size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = rank - lo;
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

inline void finalize_stats(SimStats& s, std::vector<double>& latencies,
                           double first_arrival, double last_completion) {
    if (latencies.empty())
        return;
    s.span_ns = last_completion - first_arrival;
    double sum = 0.0;
    for (double l : latencies)
        sum += l;
    s.avg_latency_ns = sum / latencies.size();
    std::sort(latencies.begin(), latencies.end());
    s.p50_latency_ns = percentile(latencies, 0.50);
    s.p95_latency_ns = percentile(latencies, 0.95);
    s.p99_latency_ns = percentile(latencies, 0.99);
    s.max_latency_ns = latencies.back();
    if (s.span_ns > 0.0)
        s.bandwidth_bytes_per_s = (s.total_bits / 8.0) / (s.span_ns * 1e-9);
    if (s.total_bits > 0)
        s.epb_pj_per_bit = s.total_energy_pj() / s.total_bits;
}

// 1 W over 1 ns is 1e-9 J, i.e. 1000 pJ.
inline constexpr double kPjPerWNs = 1e3;

} // namespace comet::detail

#endif
