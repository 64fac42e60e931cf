#include "dyscert/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "dyscert/golden_section.hpp"
#include "dyscert/symbol_sampling.hpp"

namespace dyscert {

namespace {

constexpr std::array<std::string_view, kRateCount> kRateNames{
    "theorem1_rho_f",  "theorem1_rho_g",  "theorem2_rho",
    "corollary1_new",  "condat_old",      "prop2_case1_old",
    "prop2_case1_new", "prop2_case2_old", "prop2_case2_new",
    "prop2_case3_old", "prop2_case3_new", "r_optimized",
};

constexpr double kRadicandSlack = 1e-12;

RateResult invalid(RateName name, std::string note, RateBreakdown b = {})
{
    RateResult r;
    r.name = name;
    r.valid = false;
    r.condition_note = std::move(note);
    r.breakdown = std::move(b);
    return r;
}

RateResult valid_rate(RateName name, double rho_sq, RateBreakdown b,
                      std::string note = {})
{
    if (!std::isfinite(rho_sq) || rho_sq < 0.0) {
        return invalid(name,
                       fmt::format("squared rate {} is not a finite "
                                   "nonnegative number",
                                   rho_sq),
                       std::move(b));
    }
    RateResult r;
    r.name = name;
    r.rho_sq = rho_sq;
    r.valid = true;
    r.condition_note = std::move(note);
    r.breakdown = std::move(b);
    return r;
}

// max{|2 - lambda - alpha mu_h|, |2 - lambda - alpha L_h|}
double gradient_gap(const FunctionClass& h, const AlgoParams& p)
{
    const double shift = 2.0 - p.lambda;
    return std::max(std::abs(shift - p.alpha * h.mu()),
                    std::abs(shift - p.alpha * h.L().value()));
}

double nonneg_radicand(double value, const char* what)
{
    if (value < -kRadicandSlack) {
        throw std::logic_error(
            fmt::format("radicand factor {} = {} is negative", what, value));
    }
    return std::max(value, 0.0);
}

// One side of the theorem1 bound: the circle `own` carries the exact
// evaluation, the other class contributes its two real endpoints.
RateResult theorem1_side(RateName name, const CircleSpec& own,
                         const FunctionClass& other, double d,
                         const AlgoParams& p, RateBreakdown b,
                         const char* label)
{
    const double lambda = p.lambda;
    const double C = own.center;
    if (!(lambda < 1.0 / C)) {
        return invalid(name,
                       fmt::format("requires lambda < 1/C_{0} = {1}; got "
                                   "lambda = {2}",
                                   label, 1.0 / C, lambda),
                       std::move(b));
    }
    const double slack = 1.0 / C - lambda;
    // C^2 - R^2 equals the product of the two real endpoints.
    const double first = 1.0 - lambda * (own.leftmost() * own.rightmost()) / C;
    const double weight = lambda * d * d / slack;
    auto term = [&](double z) {
        const double a = 1.0 - lambda * z;
        return a * a + weight * z * z;
    };
    const double hi = resolvent_gain(p.alpha, other.mu());
    const double lo = resolvent_gain(p.alpha, other.L());
    b.r = d / slack;
    return valid_rate(name, first * std::max(term(hi), term(lo)),
                      std::move(b));
}

bool is_zero(double v) { return v == 0.0; }

}  // namespace

std::string_view to_string(RateName name)
{
    return kRateNames.at(static_cast<std::size_t>(name));
}

RateName rate_name_from_string(std::string_view text)
{
    for (std::size_t i = 0; i < kRateNames.size(); ++i) {
        if (kRateNames[i] == text) {
            return static_cast<RateName>(i);
        }
    }
    throw DomainError(fmt::format("unknown rate name '{}'", text));
}

double RateResult::rho() const { return std::sqrt(rho_sq); }

Theorem1Rates theorem1_rates(const FunctionClass& f, const FunctionClass& g,
                             const FunctionClass& h, const AlgoParams& params)
{
    const auto cf = resolvent_srg(f, params.alpha);
    const auto cg = resolvent_srg(g, params.alpha);
    RateBreakdown b;
    b.C_f = cf.center;
    b.R_f = cf.radius;
    b.C_g = cg.center;
    b.R_g = cg.radius;
    if (!h.is_smooth()) {
        const std::string note = "requires finite L_h";
        return {invalid(RateName::theorem1_rho_f, note, b),
                invalid(RateName::theorem1_rho_g, note, b)};
    }
    const double d = gradient_gap(h, params);
    b.d = d;
    return {theorem1_side(RateName::theorem1_rho_f, cf, g, d, params, b, "f"),
            theorem1_side(RateName::theorem1_rho_g, cg, f, d, params, b, "g")};
}

RateResult theorem2_rate(const FunctionClass& f, const FunctionClass& g,
                         const FunctionClass& h, const AlgoParams& params)
{
    const auto name = RateName::theorem2_rho;
    if (!h.is_smooth()) {
        return invalid(name, "requires finite L_h");
    }
    const double alpha = params.alpha;
    const double lambda = params.lambda;
    const double mu_h = h.mu();
    const double sum_h = mu_h + h.L().value();
    RateBreakdown b;
    b.nu_f = std::min(curvature_weight(alpha, f.mu(), mu_h),
                      curvature_weight(alpha, f.L(), mu_h));
    b.nu_g = std::min(curvature_weight(alpha, g.mu(), mu_h),
                      curvature_weight(alpha, g.L(), mu_h));
    if (alpha * sum_h < 4.0) {
        b.theta = 2.0 / (4.0 - alpha * sum_h);
    }
    const double bound = 2.0 - alpha * sum_h / 2.0;
    if (!(lambda < bound)) {
        return invalid(name,
                       fmt::format("requires lambda < 2 - alpha(mu_h + L_h)/2 "
                                   "= {}; got lambda = {}",
                                   bound, lambda),
                       std::move(b));
    }
    const double theta = *b.theta;
    const double pf = nonneg_radicand(theta - alpha * *b.nu_f, "theta - alpha nu_f");
    const double pg = nonneg_radicand(theta - alpha * *b.nu_g, "theta - alpha nu_g");
    return valid_rate(name, 1.0 - lambda * theta + lambda * std::sqrt(pf * pg),
                      std::move(b));
}

namespace {

// Hypotheses shared by the corollary and the Condat-Richtarik rate.
std::optional<std::string> shared_hypothesis_violation(const FunctionClass& f,
                                           const FunctionClass& g,
                                           const FunctionClass& h,
                                           double alpha)
{
    if (!is_zero(f.mu())) {
        return "requires mu_f = 0 (f in F_{0,L_f})";
    }
    if (!f.is_smooth() || !(f.L().value() > 0.0)) {
        return "requires finite L_f > 0";
    }
    if (g.is_smooth()) {
        return "requires L_g = inf (g in F_{mu_g,inf})";
    }
    if (!h.is_smooth() || !(h.L().value() > 0.0)) {
        return "requires finite L_h > 0";
    }
    if (!(alpha < 2.0 / h.L().value())) {
        return fmt::format("requires alpha < 2/L_h = {}; got alpha = {}",
                           2.0 / h.L().value(), alpha);
    }
    if (!(g.mu() > 0.0 || h.mu() > 0.0)) {
        return "requires mu_g > 0 or mu_h > 0";
    }
    return std::nullopt;
}

}  // namespace

RateResult corollary1_rate(const FunctionClass& f, const FunctionClass& g,
                           const FunctionClass& h, double alpha)
{
    const auto name = RateName::corollary1_new;
    if (auto why = shared_hypothesis_violation(f, g, h, alpha)) {
        return invalid(name, *why);
    }
    const double d = std::max(std::abs(1.0 - alpha * h.mu()),
                              std::abs(1.0 - alpha * h.L().value()));
    const double aL = alpha * f.L().value();
    const double damped = d * d / (1.0 + 2.0 * alpha * g.mu());
    RateBreakdown b;
    b.d = d;
    return valid_rate(name,
                      std::max(damped, (aL * aL + damped) / ((1.0 + aL) * (1.0 + aL))),
                      std::move(b));
}

RateResult corollary1_rate(const FunctionClass& f, const FunctionClass& g,
                           const FunctionClass& h, const AlgoParams& params)
{
    if (params.lambda != 1.0) {
        return invalid(RateName::corollary1_new,
                       fmt::format("requires lambda = 1; got lambda = {}",
                                   params.lambda));
    }
    return corollary1_rate(f, g, h, params.alpha);
}

RateResult condat_rate(const FunctionClass& f, const FunctionClass& g,
                       const FunctionClass& h, double alpha)
{
    const auto name = RateName::condat_old;
    if (auto why = shared_hypothesis_violation(f, g, h, alpha)) {
        return invalid(name, *why);
    }
    const double den = 1.0 + alpha * g.mu();
    const double lo = 1.0 - alpha * h.mu();
    const double hi = 1.0 - alpha * h.L().value();
    const double aL = alpha * f.L().value();
    RateBreakdown b;
    b.d = std::max(std::abs(lo), std::abs(hi));
    return valid_rate(name,
                      std::max({lo * lo / den, hi * hi / den, aL / (aL + 2.0)}),
                      std::move(b));
}

RateResult condat_rate(const FunctionClass& f, const FunctionClass& g,
                       const FunctionClass& h, const AlgoParams& params)
{
    if (params.lambda != 1.0) {
        return invalid(RateName::condat_old,
                       fmt::format("requires lambda = 1; got lambda = {}",
                                   params.lambda));
    }
    return condat_rate(f, g, h, params.alpha);
}

Prop2Comparison prop2_rates(Prop2Case which, const FunctionClass& f,
                            const FunctionClass& g, const FunctionClass& h,
                            const AlgoParams& params)
{
    RateName old_name{};
    RateName new_name{};
    switch (which) {
    case Prop2Case::one:
        old_name = RateName::prop2_case1_old;
        new_name = RateName::prop2_case1_new;
        break;
    case Prop2Case::two:
        old_name = RateName::prop2_case2_old;
        new_name = RateName::prop2_case2_new;
        break;
    case Prop2Case::three:
        old_name = RateName::prop2_case3_old;
        new_name = RateName::prop2_case3_new;
        break;
    default:
        throw DomainError("proposition case must be 1, 2 or 3");
    }
    auto reject = [&](const std::string& why) {
        return Prop2Comparison{invalid(old_name, why), invalid(new_name, why),
                               false};
    };

    const bool f_smooth_zero = is_zero(f.mu()) && f.is_smooth();
    const bool g_plain = is_zero(g.mu()) && !g.is_smooth();
    switch (which) {
    case Prop2Case::one:
        if (!g_plain) {
            return reject("requires g in F_{0,inf} (mu_g = 0, L_g = inf)");
        }
        if (!is_zero(h.mu())) {
            return reject("requires h in F_{0,L_h} (mu_h = 0)");
        }
        break;
    case Prop2Case::two:
        if (!f_smooth_zero) {
            return reject("requires f in F_{0,L_f} (mu_f = 0, finite L_f)");
        }
        if (g.is_smooth()) {
            return reject("requires g in F_{mu_g,inf} (L_g = inf)");
        }
        if (!is_zero(h.mu())) {
            return reject("requires h in F_{0,L_h} (mu_h = 0)");
        }
        break;
    case Prop2Case::three:
        if (!f_smooth_zero) {
            return reject("requires f in F_{0,L_f} (mu_f = 0, finite L_f)");
        }
        if (!g_plain) {
            return reject("requires g in F_{0,inf} (mu_g = 0, L_g = inf)");
        }
        break;
    }
    if (!h.is_smooth()) {
        return reject("requires finite L_h");
    }

    const double alpha = params.alpha;
    const double lambda = params.lambda;
    const double L_h = h.L().value();
    if (!(alpha * L_h < 4.0)) {
        return reject(fmt::format("requires alpha L_h < 4; got {}", alpha * L_h));
    }
    const double lambda_bound = 2.0 - alpha * L_h / 2.0;
    if (!(lambda < lambda_bound)) {
        return reject(fmt::format(
            "requires lambda < 2 - alpha L_h/2 = {}; got lambda = {}",
            lambda_bound, lambda));
    }

    Prop2Comparison out;
    RateBreakdown b;
    switch (which) {
    case Prop2Case::one: {
        const double theta = 2.0 / (4.0 - alpha * L_h);
        b.theta = theta;
        const double aL = f.is_smooth() ? alpha * f.L().value() : 0.0;
        const double old_pull =
            f.is_smooth()
                ? 2.0 * alpha * f.mu() / (aL * aL + 2.0 * alpha * f.mu() + 1.0)
                : 0.0;
        const double nu = std::min(curvature_weight(alpha, f.mu(), 0.0),
                                   curvature_weight(alpha, f.L(), 0.0));
        RateBreakdown bn = b;
        bn.nu_f = nu;
        bn.nu_g = 0.0;
        const double old_rad = nonneg_radicand(theta - old_pull, "old case 1");
        const double new_rad = nonneg_radicand(theta - alpha * nu, "new case 1");
        out.old_rate = valid_rate(
            old_name, 1.0 - lambda * theta + lambda * std::sqrt(theta * old_rad), b);
        out.new_rate = valid_rate(
            new_name, 1.0 - lambda * theta + lambda * std::sqrt(theta * new_rad), bn);
        out.strict_expected = f.mu() > 0.0 && f.is_smooth() &&
                              f.mu() < f.L().value();
        break;
    }
    case Prop2Case::two: {
        const double mu_g = g.mu();
        const double L_f = f.L().value();
        const double aL = alpha * L_f;
        const double two_l = 2.0 - lambda;
        const double den = two_l + 2.0 * alpha * mu_g;
        const double a_new = two_l * mu_g / den;
        const double a_old = a_new / (1.0 + aL * aL);
        const double shared = (two_l * (mu_g + L_f) + 2.0 * alpha * mu_g * L_f) /
                              ((1.0 + aL) * (1.0 + aL) * den);
        out.old_rate = valid_rate(
            old_name, 1.0 - 2.0 * lambda * alpha * std::min(a_old, shared), b);
        out.new_rate = valid_rate(
            new_name, 1.0 - 2.0 * lambda * alpha * std::min(a_new, shared), b);
        const double cond = two_l * (1.0 - 2.0 * alpha * mu_g + aL * aL) +
                            2.0 * alpha * mu_g * (1.0 + aL * aL);
        out.strict_expected = cond > 0.0 && mu_g > 0.0;
        break;
    }
    case Prop2Case::three: {
        const double mu_h = h.mu();
        const double L_f = f.L().value();
        const double aL = alpha * L_f;
        const double scale = alpha / (2.0 * (2.0 - lambda));
        const double q = mu_h * (1.0 - scale * L_h);
        const double xi = std::min(mu_h * (1.0 - scale * mu_h),
                                   L_h * (1.0 - scale * L_h));
        const double sq = (1.0 + aL) * (1.0 + aL);
        RateBreakdown bn = b;
        bn.xi = xi;
        out.old_rate = valid_rate(
            old_name,
            1.0 - 2.0 * lambda * alpha *
                      std::min(q / (1.0 + aL * aL), (L_f + q) / sq),
            b);
        out.new_rate = valid_rate(
            new_name,
            1.0 - 2.0 * lambda * alpha * std::min(xi, (L_f + xi) / sq), bn);
        out.strict_expected = mu_h > 0.0 && mu_h < L_h;
        break;
    }
    }
    return out;
}

double r_split_objective(const FunctionClass& f, const FunctionClass& g,
                         const FunctionClass& h, const AlgoParams& params,
                         double r)
{
    if (!(r > 0.0)) {
        throw DomainError(fmt::format("r must be > 0, got {}", r));
    }
    const double lambda = params.lambda;
    const double d = gradient_gap(h, params);
    const double k = lambda * lambda;
    const double b = 1.0 / lambda;
    const auto cf = resolvent_srg(f, params.alpha);
    const auto cg = resolvent_srg(g, params.alpha);
    // lambda^2 |z - 1/lambda|^2 = |1 - lambda z|^2
    const double left = circle_quadratic_max(k, lambda * d / r, b, cf).value;
    const double right = circle_quadratic_max(k, lambda * d * r, b, cg).value;
    return left * right;
}

RateResult r_optimized_rate(const FunctionClass& f, const FunctionClass& g,
                            const FunctionClass& h, const AlgoParams& params,
                            const RSearchConfig& search)
{
    const auto name = RateName::r_optimized;
    const auto cf = resolvent_srg(f, params.alpha);
    const auto cg = resolvent_srg(g, params.alpha);
    RateBreakdown b;
    b.C_f = cf.center;
    b.R_f = cf.radius;
    b.C_g = cg.center;
    b.R_g = cg.radius;
    if (!h.is_smooth()) {
        return invalid(name, "requires finite L_h", std::move(b));
    }
    if (!(search.r_min > 0.0 && search.r_min < search.r_max)) {
        throw DomainError("r search bracket must satisfy 0 < r_min < r_max");
    }
    const double d = gradient_gap(h, params);
    b.d = d;
    auto objective = [&](double log_r) {
        return r_split_objective(f, g, h, params, std::exp(log_r));
    };

    if (d == 0.0) {
        b.r = 1.0;
        return valid_rate(name, r_split_objective(f, g, h, params, 1.0),
                          std::move(b), "objective independent of r (d = 0)");
    }

    const double lo = std::log(search.r_min);
    const double hi = std::log(search.r_max);
    const auto scan = std::max<std::size_t>(search.bracket_scan, 3);
    std::size_t best_i = 0;
    double best_v = std::numeric_limits<double>::infinity();
    auto scan_point = [&](std::size_t i) {
        return lo + (hi - lo) * static_cast<double>(i) /
                        static_cast<double>(scan - 1);
    };
    for (std::size_t i = 0; i < scan; ++i) {
        const double v = objective(scan_point(i));
        if (v < best_v) {
            best_v = v;
            best_i = i;
        }
    }
    const double a = scan_point(best_i == 0 ? 0 : best_i - 1);
    const double c = scan_point(std::min(best_i + 1, scan - 1));
    const auto minimum = golden_section_minimize(objective, a, c, search.rel_tol);

    double best_log_r = minimum.x;
    double best_value = minimum.value;
    if (best_v < best_value) {
        best_value = best_v;
        best_log_r = scan_point(best_i);
    }
    // The proof's fixed choices of r remain valid bounds; keep them as
    // candidates so the optimized value never exceeds theorem1_rates.
    const double lambda = params.lambda;
    std::array<double, 2> fixed{0.0, 0.0};
    if (lambda < 1.0 / cf.center) {
        fixed[0] = d / (1.0 / cf.center - lambda);
    }
    if (lambda < 1.0 / cg.center) {
        fixed[1] = (1.0 / cg.center - lambda) / d;
    }
    for (double r : fixed) {
        if (r > 0.0 && std::isfinite(r)) {
            const double v = r_split_objective(f, g, h, params, r);
            if (v < best_value) {
                best_value = v;
                best_log_r = std::log(r);
            }
        }
    }

    b.r = std::exp(best_log_r);
    std::string note;
    const double edge = 1e-6 * (hi - lo);
    if (best_log_r - lo <= edge || hi - best_log_r <= edge) {
        note = "minimizer at search bracket endpoint";
    }
    return valid_rate(name, best_value, std::move(b), std::move(note));
}

std::vector<RateResult> compare_all(const FunctionClass& f,
                                    const FunctionClass& g,
                                    const FunctionClass& h,
                                    const AlgoParams& params)
{
    std::vector<RateResult> rows;
    rows.reserve(kRateCount);
    auto t1 = theorem1_rates(f, g, h, params);
    rows.push_back(std::move(t1.rho_f));
    rows.push_back(std::move(t1.rho_g));
    rows.push_back(theorem2_rate(f, g, h, params));
    rows.push_back(corollary1_rate(f, g, h, params));
    rows.push_back(condat_rate(f, g, h, params));
    for (auto which : {Prop2Case::one, Prop2Case::two, Prop2Case::three}) {
        auto cmp = prop2_rates(which, f, g, h, params);
        rows.push_back(std::move(cmp.old_rate));
        rows.push_back(std::move(cmp.new_rate));
    }
    rows.push_back(r_optimized_rate(f, g, h, params));
    return rows;
}

std::optional<double> best_valid_rate(const std::vector<RateResult>& table)
{
    std::optional<double> best;
    for (const auto& row : table) {
        if (row.valid && (!best || row.rho() < *best)) {
            best = row.rho();
        }
    }
    return best;
}

}  // namespace dyscert
