#ifndef COMET_TRACE_SYNTH_HPP
#define COMET_TRACE_SYNTH_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "comet/engine.hpp"

namespace comet {

// Deterministic 64-bit generator (splitmix64, Steele et al.): identical
// streams on every platform, so synthesized traces are reproducible
// byte-for-byte across implementations.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

struct TraceSpec {
    enum class Pattern { Stream, Stride, Random } pattern = Pattern::Stream;
    uint64_t stride_lines = 1;   // for Stride: lines skipped per request
    uint64_t seed = 1;           // for Random
    uint64_t request_count = 1000;
    double read_fraction = 1.0;  // reads = floor(fraction * count + 0.5)
    double inter_arrival_ns = 0.0;
    uint64_t footprint_bytes = 1ull << 30;
    uint32_t line_bytes = 128;
};

// Deterministic for a given spec. Addresses are line-aligned and stay
// within the footprint; the op mix matches read_fraction exactly
// (rounded), spread evenly through the trace.
std::vector<TraceRequest> generate(const TraceSpec& spec);

// Emits the engine's trace grammar.
void write_trace(std::ostream& out, const std::vector<TraceRequest>& trace);

} // namespace comet

#endif
