#pragma once

#include <string>
#include <vector>

namespace aniso {

// One named internal consistency check.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail; // numbers involved, shown on failure or -v
    double seconds = 0.0;
};

// Run the library's cross-validation suite: every analytic quantity that has
// an independent second route (spectral symbol vs. DFT of the stencil,
// optimizer vs. dense grid scan, closed-form stability bound vs. simulated
// growth, ...) is computed both ways and compared.
//
// include_slow adds the checks that run time integrations (several seconds).
std::vector<CheckResult> run_invariant_suite(bool include_slow);

} // namespace aniso
