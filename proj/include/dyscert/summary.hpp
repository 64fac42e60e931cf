#ifndef DYSCERT_SUMMARY_HPP
#define DYSCERT_SUMMARY_HPP

#include <cstddef>
#include <optional>

#include "dyscert/class_geometry.hpp"
#include "dyscert/dys_engine.hpp"
#include "dyscert/symbol_sampling.hpp"

namespace dyscert {

/// Slack when comparing a certified rate against a sampled or observed value.
inline constexpr double kSoundnessSlack = 1e-9;
/// Relative gap allowed between rho(r*) and the sampled sup for "contact".
inline constexpr double kContactTolerance = 1e-2;

/// Certified radii next to the sampled symbol, as drawn in the SRG plot.
/// Rate fields are empty when the corresponding hypothesis fails.
struct InstanceSummary {
    SupEstimate estimate;
    std::optional<double> rho_f;
    std::optional<double> rho_g;
    std::optional<double> rho_theorem2;
    std::optional<double> rho_r_opt;
    std::optional<double> r_star;

    /// rho_g - sup
    std::optional<double> margin_g;
    /// |rho(r*) - sup| / sup
    std::optional<double> contact_rel;

    std::optional<bool> gap_positive;
    std::optional<bool> below_rho_f;
    std::optional<bool> below_theorem2;
    std::optional<bool> contact_ok;
};

InstanceSummary summarize_instance(const FunctionClass& f,
                                   const FunctionClass& g,
                                   const FunctionClass& h,
                                   const AlgoParams& params,
                                   std::size_t grid_n = kDefaultGridN,
                                   const SamplingOptions& options = {});

struct IterationSummary {
    std::size_t steps = 0;
    double final_residual = 0.0;
    double max_pair_ratio = 0.0;
    /// Best valid rate for the tightest classes containing the instance.
    std::optional<double> best_rate;
    std::optional<bool> within_rate;
};

IterationSummary summarize_iteration(const DysInstance& inst,
                                     const IterationLog& log);

}  // namespace dyscert

#endif  // DYSCERT_SUMMARY_HPP
