#ifndef DYSCERT_RATES_HPP
#define DYSCERT_RATES_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dyscert/class_geometry.hpp"

namespace dyscert {

/// Rate identifiers; the enumerator order is the row order of compare_all().
enum class RateName {
    theorem1_rho_f,
    theorem1_rho_g,
    theorem2_rho,
    corollary1_new,
    condat_old,
    prop2_case1_old,
    prop2_case1_new,
    prop2_case2_old,
    prop2_case2_new,
    prop2_case3_old,
    prop2_case3_new,
    r_optimized,
};

inline constexpr std::size_t kRateCount = 12;

std::string_view to_string(RateName name);
/// Inverse of to_string; throws DomainError on unknown names.
RateName rate_name_from_string(std::string_view text);

/// Intermediate quantities; each field is present only where meaningful.
struct RateBreakdown {
    std::optional<double> C_f, C_g, R_f, R_g;
    std::optional<double> d;
    std::optional<double> theta;
    std::optional<double> nu_f, nu_g;
    std::optional<double> xi;
    std::optional<double> r;

    friend bool operator==(const RateBreakdown&,
                           const RateBreakdown&) = default;
};

struct RateResult {
    RateName name = RateName::theorem1_rho_f;
    /// Squared contraction factor; every formula is evaluated in this form.
    double rho_sq = 0.0;
    bool valid = false;
    /// Names the violated hypothesis when invalid; may carry remarks otherwise.
    std::string condition_note;
    RateBreakdown breakdown;

    double rho() const;

    friend bool operator==(const RateResult&, const RateResult&) = default;
};

struct Theorem1Rates {
    RateResult rho_f;
    RateResult rho_g;
};

Theorem1Rates theorem1_rates(const FunctionClass& f, const FunctionClass& g,
                             const FunctionClass& h, const AlgoParams& params);

/// Throws std::logic_error if a radicand factor is below -1e-12.
RateResult theorem2_rate(const FunctionClass& f, const FunctionClass& g,
                         const FunctionClass& h, const AlgoParams& params);

/// lambda = 1 is implied by the alpha-only overloads; the AlgoParams
/// overloads additionally require params.lambda == 1.
RateResult corollary1_rate(const FunctionClass& f, const FunctionClass& g,
                           const FunctionClass& h, double alpha);
RateResult corollary1_rate(const FunctionClass& f, const FunctionClass& g,
                           const FunctionClass& h, const AlgoParams& params);
RateResult condat_rate(const FunctionClass& f, const FunctionClass& g,
                       const FunctionClass& h, double alpha);
RateResult condat_rate(const FunctionClass& f, const FunctionClass& g,
                       const FunctionClass& h, const AlgoParams& params);

enum class Prop2Case { one = 1, two = 2, three = 3 };

struct Prop2Comparison {
    RateResult old_rate;
    RateResult new_rate;
    /// Whether the stated sufficient condition for new < old holds.
    bool strict_expected = false;
};

Prop2Comparison prop2_rates(Prop2Case which, const FunctionClass& f,
                            const FunctionClass& g, const FunctionClass& h,
                            const AlgoParams& params);

struct RSearchConfig {
    double r_min = 1e-6;
    double r_max = 1e6;
    double rel_tol = 1e-10;
    /// Coarse log-spaced scan used to bracket the golden-section search.
    std::size_t bracket_scan = 128;
};

/// Squared r-split bound: [max over z_f endpoints of |1-lz_f|^2 + l d r^-1
/// |z_f|^2] * [max over z_g endpoints of |1-lz_g|^2 + l d r |z_g|^2].
/// Requires finite L_h and r > 0.
double r_split_objective(const FunctionClass& f, const FunctionClass& g,
                         const FunctionClass& h, const AlgoParams& params,
                         double r);

RateResult r_optimized_rate(const FunctionClass& f, const FunctionClass& g,
                            const FunctionClass& h, const AlgoParams& params,
                            const RSearchConfig& search = {});

/// Every rate, ordered by RateName; inapplicable rows are flagged invalid.
std::vector<RateResult> compare_all(const FunctionClass& f,
                                    const FunctionClass& g,
                                    const FunctionClass& h,
                                    const AlgoParams& params);

/// Smallest rho among valid rows, if any.
std::optional<double> best_valid_rate(const std::vector<RateResult>& table);

}  // namespace dyscert

#endif  // DYSCERT_RATES_HPP
