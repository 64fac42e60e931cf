#include "dyscert/summary.hpp"

#include <algorithm>
#include <cmath>

#include "dyscert/rates.hpp"

namespace dyscert {

namespace {

std::optional<double> rho_if_valid(const RateResult& r)
{
    return r.valid ? std::optional<double>(r.rho()) : std::nullopt;
}

}  // namespace

InstanceSummary summarize_instance(const FunctionClass& f,
                                   const FunctionClass& g,
                                   const FunctionClass& h,
                                   const AlgoParams& params,
                                   std::size_t grid_n,
                                   const SamplingOptions& options)
{
    InstanceSummary s;
    s.estimate = estimate_sup_modulus(f, g, h, params, grid_n, options);
    const double sup = s.estimate.sup_modulus;

    const auto t1 = theorem1_rates(f, g, h, params);
    s.rho_f = rho_if_valid(t1.rho_f);
    s.rho_g = rho_if_valid(t1.rho_g);
    s.rho_theorem2 = rho_if_valid(theorem2_rate(f, g, h, params));
    const auto ropt = r_optimized_rate(f, g, h, params);
    s.rho_r_opt = rho_if_valid(ropt);
    if (ropt.valid) {
        s.r_star = ropt.breakdown.r;
    }

    if (s.rho_g) {
        s.margin_g = *s.rho_g - sup;
        s.gap_positive = *s.margin_g > 0.0;
    }
    if (s.rho_f) {
        s.below_rho_f = sup <= *s.rho_f + kSoundnessSlack;
    }
    if (s.rho_theorem2) {
        s.below_theorem2 = sup <= *s.rho_theorem2 + kSoundnessSlack;
    }
    if (s.rho_r_opt && sup > 0.0) {
        s.contact_rel = std::abs(*s.rho_r_opt - sup) / sup;
        s.contact_ok = *s.contact_rel <= kContactTolerance;
    }
    return s;
}

IterationSummary summarize_iteration(const DysInstance& inst,
                                     const IterationLog& log)
{
    IterationSummary s;
    s.steps = log.residuals.size();
    if (!log.residuals.empty()) {
        s.final_residual = log.residuals.back();
    }
    if (!log.pair_ratios.empty()) {
        s.max_pair_ratio =
            *std::max_element(log.pair_ratios.begin(), log.pair_ratios.end());
    }
    s.best_rate = best_valid_rate(compare_all(inst.f.tightest_class(),
                                              inst.g.tightest_class(),
                                              inst.h.tightest_class(),
                                              inst.params));
    if (s.best_rate) {
        s.within_rate = s.max_pair_ratio <= *s.best_rate + kSoundnessSlack;
    }
    return s;
}

}  // namespace dyscert
