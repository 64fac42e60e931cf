#ifndef DYSCERT_VERIFY_HPP
#define DYSCERT_VERIFY_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dyscert/class_geometry.hpp"
#include "dyscert/rates.hpp"

namespace dyscert {

/// One (f, g, h, alpha, lambda) parameter set.
struct ParameterSet {
    FunctionClass f;
    FunctionClass g;
    FunctionClass h;
    AlgoParams params;

    /// Command-line flags reproducing this set.
    std::string to_flags() const;
};

using RateTableFn = std::function<std::vector<RateResult>(
    const FunctionClass&, const FunctionClass&, const FunctionClass&,
    const AlgoParams&)>;

struct VerifyConfig {
    std::uint64_t seed = 0;
    std::size_t grid_n = 256;
    /// Parameter sets in the soundness sweeps.
    std::size_t soundness_sets = 200;
    /// Parameter sets per proposition sweep.
    std::size_t sweep_sets = 500;
    /// Random instances in the symbol-operator identity check.
    std::size_t identity_instances = 1000;
    std::size_t cauchy_schwarz_draws = 100000;
    std::size_t circle_sweeps = 100;
    std::size_t interior_draws = 10000;
    std::size_t interior_grid_n = 512;
    /// Rate provider under test; a corrupted provider makes soundness fail.
    RateTableFn rate_table = compare_all;
};

struct PropertyOutcome {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    /// Smallest slack observed; negative means violated.
    double worst_margin = 0.0;
    /// Parameter set (as flags) or values at the worst case.
    std::string witness;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<PropertyOutcome> properties;

    bool all_passed() const;
};

VerifyReport run_verification(const VerifyConfig& config);

/// One "PASS|FAIL name cases=.. worst_margin=.." line per property.
std::string format_report(const VerifyReport& report);

}  // namespace dyscert

#endif  // DYSCERT_VERIFY_HPP
