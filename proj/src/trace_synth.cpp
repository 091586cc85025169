#include "comet/trace_synth.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace comet {

std::vector<TraceRequest> generate(const TraceSpec& spec) {
    if (spec.read_fraction < 0.0 || spec.read_fraction > 1.0)
        throw std::invalid_argument("read_fraction outside [0,1]");
    if (spec.line_bytes == 0 || spec.footprint_bytes < spec.line_bytes)
        throw std::invalid_argument("footprint smaller than one line");

    uint64_t lines = spec.footprint_bytes / spec.line_bytes;
    uint64_t reads = static_cast<uint64_t>(
        std::floor(spec.read_fraction * spec.request_count + 0.5));

    SplitMix64 rng(spec.seed);
    std::vector<TraceRequest> trace;
    trace.reserve(spec.request_count);

    uint64_t reads_issued = 0;
    for (uint64_t i = 0; i < spec.request_count; ++i) {
        TraceRequest r;
        r.arrival_ns = spec.inter_arrival_ns * i;
        // Even spread of the exact read count through the trace.
        uint64_t quota = (i + 1) * reads / spec.request_count;
        r.op = reads_issued < quota ? TraceRequest::Op::Read
                                    : TraceRequest::Op::Write;
        if (r.op == TraceRequest::Op::Read)
            ++reads_issued;

        uint64_t line = 0;
        switch (spec.pattern) {
        case TraceSpec::Pattern::Stream:
            line = i % lines;
            break;
        case TraceSpec::Pattern::Stride:
            line = (i * spec.stride_lines) % lines;
            break;
        case TraceSpec::Pattern::Random:
            line = rng.next() % lines;
            break;
        }
        r.address = line * spec.line_bytes;
        r.size_bytes = spec.line_bytes;
        trace.push_back(r);
    }
    return trace;
}

void write_trace(std::ostream& out, const std::vector<TraceRequest>& trace) {
    out << "# <time_ns> <R|W> <hex_address> [<size_bytes>]\n";
    for (const auto& r : trace) {
        out << r.arrival_ns << ' '
            << (r.op == TraceRequest::Op::Read ? 'R' : 'W') << " 0x" << std::hex
            << r.address << std::dec;
        if (r.size_bytes)
            out << ' ' << r.size_bytes;
        out << '\n';
    }
}

} // namespace comet
