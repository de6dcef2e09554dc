#pragma once

#include <stdexcept>
#include <string>

namespace tww {

// Thrown when an input exceeds a configured resource cap. The CLI maps it to
// exit code 3 so scripts can tell "too big to certify" from a plain failure.
struct CapError : std::runtime_error {
    explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Resource caps for the search oracles. Exhaustive procedures refuse inputs
// beyond these sizes instead of silently degrading.
struct Caps {
    int exact_n = 9;                      // max vertices for exact_twinwidth
    long long brute_assignments = 50'000'000;  // max n^l for brute_force_check
    int grid_minor_n = 20;                // max rows/cols for exhaustive grid-minor search
    int mixed_minor_n = 14;               // max rows/cols for exhaustive mixed-minor search
    long long reduct_nodes = 1'000'000;   // max nodes in any morphism tree
};

// Parses the TWW_CAPS environment variable, e.g. "exact=10,mixed=16".
// Recognized keys: exact, brute, grid, mixed, reduct. Unknown keys raise
// UsageError. Returns defaults when the variable is unset.
Caps caps_from_env();

// Applies a TWW_CAPS-style spec string on top of `base`.
Caps apply_caps_spec(Caps base, const std::string& spec);

}  // namespace tww
