#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace hgsparse {

using Index = std::int64_t;

// Malformed input file; message names the offending line.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iterative solver did not reach its tolerance within the iteration cap.
struct SolverFailure : std::runtime_error {
    SolverFailure(const std::string& what, Index iterations, double residual)
        : std::runtime_error(what), iterations(iterations), residual(residual) {}
    Index iterations;
    double residual;
};

// Global worker count for parallel_for. 0 restores the hardware default.
// Results of every parallel region in this library are bitwise independent
// of the worker count: workers either fill disjoint output slots or feed an
// associative max-combine.
int thread_count();
void set_thread_count(int count);

// Runs body(begin, end) over contiguous chunks of [0, n).
void parallel_for(Index n, const std::function<void(Index, Index)>& body);

}  // namespace hgsparse
