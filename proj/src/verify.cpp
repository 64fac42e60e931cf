#include "dyscert/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "dyscert/dys_engine.hpp"
#include "dyscert/symbol_sampling.hpp"

namespace dyscert {

namespace {

constexpr double kIdentityTol = 1e-12;
constexpr double kSoundnessSlack = 1e-9;
constexpr double kMaxModulusSlack = 1e-3;

class Tracker {
public:
    explicit Tracker(std::string name) { out_.name = std::move(name); }

    template <typename WitnessFn>
    void record(double margin, WitnessFn&& witness)
    {
        ++out_.cases;
        if (first_ || margin < out_.worst_margin) {
            first_ = false;
            out_.worst_margin = margin;
            out_.witness = witness();
        }
        if (!(margin >= 0.0)) {
            out_.passed = false;
        }
    }

    PropertyOutcome finish() { return std::move(out_); }

private:
    PropertyOutcome out_;
    bool first_ = true;
};

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_{seed} {}

    double uniform(double a, double b)
    {
        return std::uniform_real_distribution<double>(a, b)(rng_);
    }
    bool coin(double p) { return uniform(0.0, 1.0) < p; }

    double modulus() { return uniform(0.05, 10.0); }

    FunctionClass any_class()
    {
        if (coin(0.2)) {
            return FunctionClass::nonsmooth(coin(0.3) ? 0.0 : uniform(0.0, 10.0));
        }
        return smooth_class();
    }

    FunctionClass smooth_class()
    {
        const double L = modulus();
        return FunctionClass::smooth(coin(0.25) ? 0.0 : uniform(0.0, L), L);
    }

    ParameterSet generic()
    {
        auto f = any_class();
        auto g = any_class();
        auto h = smooth_class();
        const double alpha = uniform(0.05, 2.0);
        const double lambda = coin(0.3) ? 1.0 : uniform(0.02, 1.98);
        return {f, g, h, AlgoParams(alpha, lambda)};
    }

    /// Hypotheses of the corollary and the Condat-Richtarik rate.
    ParameterSet corollary_setting(bool zero_mu_g)
    {
        const double L_f = modulus();
        const double L_h = modulus();
        const double alpha = uniform(0.01, 0.99) * 2.0 / L_h;
        double mu_h = coin(0.3) ? 0.0 : uniform(0.0, L_h);
        const double mu_g = zero_mu_g ? 0.0 : uniform(0.01, 10.0);
        if (mu_g == 0.0 && mu_h == 0.0) {
            mu_h = uniform(0.01, 1.0) * L_h;
        }
        return {FunctionClass::smooth(0.0, L_f), FunctionClass::nonsmooth(mu_g),
                FunctionClass::smooth(mu_h, L_h), AlgoParams(alpha, 1.0)};
    }

    ParameterSet prop2(Prop2Case which, bool boundary)
    {
        const double L_h = modulus();
        const double alpha = uniform(0.01, 0.99) * std::min(2.0, 4.0 / L_h);
        const double lambda = uniform(0.01, 0.99) * (2.0 - alpha * L_h / 2.0);
        const AlgoParams p(alpha, lambda);
        switch (which) {
        case Prop2Case::one: {
            FunctionClass f = coin(0.2) ? FunctionClass::nonsmooth(0.0)
                                        : smooth_class();
            if (boundary) {
                f = FunctionClass(0.0, f.L());
            }
            else if (f.mu() == 0.0 && f.is_smooth()) {
                f = FunctionClass::smooth(uniform(0.01, 0.99) * f.L().value(),
                                          f.L().value());
            }
            return {f, FunctionClass::nonsmooth(0.0),
                    FunctionClass::smooth(0.0, L_h), p};
        }
        case Prop2Case::two:
            return {FunctionClass::smooth(0.0, modulus()),
                    FunctionClass::nonsmooth(boundary ? 0.0 : uniform(0.01, 10.0)),
                    FunctionClass::smooth(0.0, L_h), p};
        case Prop2Case::three:
            return {FunctionClass::smooth(0.0, modulus()),
                    FunctionClass::nonsmooth(0.0),
                    FunctionClass::smooth(
                        boundary ? 0.0 : uniform(0.01, 0.99) * L_h, L_h),
                    p};
        }
        return generic();
    }

    /// Mixture that exercises every rate family.
    ParameterSet mixed()
    {
        const double u = uniform(0.0, 1.0);
        if (u < 0.5) {
            return generic();
        }
        if (u < 0.62) {
            return corollary_setting(coin(0.3));
        }
        if (u < 0.75) {
            return prop2(Prop2Case::one, coin(0.3));
        }
        if (u < 0.88) {
            return prop2(Prop2Case::two, coin(0.3));
        }
        return prop2(Prop2Case::three, coin(0.3));
    }

    Complex in_disk(const CircleSpec& c)
    {
        const double rad = c.radius * std::sqrt(uniform(0.0, 1.0));
        return c.center + std::polar(rad, uniform(0.0, 2.0 * std::numbers::pi));
    }

private:
    std::mt19937_64 rng_;
};

std::string fmt_num(double v) { return fmt::format("{:.17g}", v); }

// A strict inequality old > new holds with margin diff; zero counts as failed.
double strict_margin(double diff)
{
    return diff > 0.0 ? diff : std::min(diff, -std::numeric_limits<double>::min());
}

ParameterSet figure1_set()
{
    return {FunctionClass::smooth(0.7, 1.5), FunctionClass::smooth(2.0, 3.0),
            FunctionClass::smooth(0.8, 1.3), AlgoParams(0.9, 1.0)};
}

PropertyOutcome check_cauchy_schwarz(const VerifyConfig& cfg)
{
    Sampler s(cfg.seed ^ 0x51ULL);
    Tracker t("cauchy_schwarz_split");
    auto draw = [&] { return s.coin(0.05) ? 0.0 : std::exp(s.uniform(-6.0, 6.0)); };
    for (std::size_t n = 0; n < cfg.cauchy_schwarz_draws; ++n) {
        const double a = draw(), b = draw(), c = draw(), d = draw();
        const double root = std::sqrt(a * b) + std::sqrt(c * d);
        const double lhs = root * root;
        const double rhs = (a + c) * (b + d);
        const double margin = rhs == 0.0 ? -lhs : (rhs - lhs) / rhs + 1e-12;
        t.record(margin, [&] {
            return fmt::format("a={} b={} c={} d={}", fmt_num(a), fmt_num(b),
                               fmt_num(c), fmt_num(d));
        });
    }
    return t.finish();
}

PropertyOutcome check_circle_quadratic(const VerifyConfig& cfg)
{
    Sampler s(cfg.seed ^ 0x52ULL);
    Tracker t("circle_quadratic_max_dominates_sweep");
    constexpr std::size_t kAngles = 10000;
    for (std::size_t n = 0; n < cfg.circle_sweeps; ++n) {
        const double k = s.coin(0.1) ? 0.0 : s.uniform(0.0, 5.0);
        const double l = (k == 0.0 || !s.coin(0.1)) ? s.uniform(0.01, 5.0) : 0.0;
        const double b = s.uniform(-5.0, 5.0);
        const CircleSpec circle(s.uniform(-3.0, 3.0), s.uniform(0.0, 2.0));
        const auto best = circle_quadratic_max(k, l, b, circle);
        double sweep = -std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < kAngles; ++m) {
            const Complex z =
                circle.center + std::polar(circle.radius, sample_angle(m, kAngles));
            sweep = std::max(sweep, k * std::norm(z - b) + l * std::norm(z));
        }
        const double margin = best.value - sweep + 1e-12 * (1.0 + std::abs(sweep));
        t.record(margin, [&] {
            return fmt::format("k={} l={} b={} c={} r={}", fmt_num(k), fmt_num(l),
                               fmt_num(b), fmt_num(circle.center),
                               fmt_num(circle.radius));
        });
    }
    return t.finish();
}

PropertyOutcome check_max_modulus(const VerifyConfig& cfg)
{
    Sampler s(cfg.seed ^ 0x53ULL);
    Tracker t("interior_below_boundary_sup");
    std::vector<ParameterSet> sets{figure1_set(), s.generic()};
    for (const auto& ps : sets) {
        const auto est = estimate_sup_modulus(ps.f, ps.g, ps.h, ps.params,
                                              cfg.interior_grid_n);
        const auto circles = symbol_circles(ps.f, ps.g, ps.h, ps.params.alpha);
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t n = 0; n < cfg.interior_draws; ++n) {
            const Complex v = zeta_dys(s.in_disk(circles.f), s.in_disk(circles.g),
                                       s.in_disk(circles.h), ps.params);
            worst = std::min(worst, est.sup_modulus + kMaxModulusSlack - std::abs(v));
        }
        t.record(worst, [&] { return ps.to_flags(); });
    }
    return t.finish();
}

PropertyOutcome check_conjugate_symmetry(const VerifyConfig& cfg)
{
    Sampler s(cfg.seed ^ 0x54ULL);
    Tracker t("conjugate_symmetry");
    for (int n = 0; n < 20; ++n) {
        const auto ps = s.generic();
        for (const auto& p : export_symbol_cloud(ps.f, ps.g, ps.h, ps.params, 12)) {
            const double mirrored = std::abs(zeta_dys(
                std::conj(p.z_f), std::conj(p.z_g), std::conj(p.z_h), ps.params));
            t.record(kIdentityTol * (1.0 + p.modulus) - std::abs(mirrored - p.modulus),
                     [&] { return ps.to_flags(); });
        }
    }
    return t.finish();
}

PropertyOutcome check_symbol_identity(const VerifyConfig& cfg)
{
    Sampler s(cfg.seed ^ 0x55ULL);
    Tracker t("symbol_operator_identity");
    for (std::size_t n = 0; n < cfg.identity_instances; ++n) {
        const double cf = s.uniform(0.0, 10.0);
        const double cg = s.uniform(0.0, 10.0);
        const double ch = s.uniform(0.0, 10.0);
        const AlgoParams p(s.uniform(0.05, 2.0), s.uniform(0.02, 1.98));
        auto scalar = [](double c) {
            return QuadraticSpec::homogeneous(Vector::Constant(1, c));
        };
        const DysInstance inst(scalar(cf), scalar(cg), scalar(ch), p);
        const double z = s.uniform(-10.0, 10.0);
        const double applied = dys_apply(inst, Vector::Constant(1, z))[0];
        const double symbol =
            zeta_dys(resolvent_gain(p.alpha, cf), resolvent_gain(p.alpha, cg), ch, p)
                .real() * z;
        const double margin =
            kIdentityTol * std::max(std::abs(symbol), std::abs(z)) -
            std::abs(applied - symbol);
        t.record(margin, [&] {
            return fmt::format("c_f={} c_g={} c_h={} alpha={} lambda={} z={}",
                               fmt_num(cf), fmt_num(cg), fmt_num(ch),
                               fmt_num(p.alpha), fmt_num(p.lambda), fmt_num(z));
        });
    }
    return t.finish();
}

PropertyOutcome check_prop1(const VerifyConfig& cfg)
{
    Sampler s(cfg.seed ^ 0x56ULL);
    Tracker t("corollary_vs_condat");
    for (std::size_t n = 0; n < cfg.sweep_sets; ++n) {
        const auto ps = s.corollary_setting(n % 2 == 0);
        const auto fresh = corollary1_rate(ps.f, ps.g, ps.h, ps.params);
        const auto old = condat_rate(ps.f, ps.g, ps.h, ps.params);
        const double diff = old.rho() - fresh.rho();
        // Equality holds exactly when mu_g = 0 and d^2 >= aL_f/(aL_f + 2);
        // otherwise the corollary is strictly faster.
        const double aL = ps.params.alpha * ps.f.L().value();
        const double d = *fresh.breakdown.d;
        const bool equal = ps.g.mu() == 0.0 && d * d >= aL / (aL + 2.0);
        double margin = 0.0;
        if (!fresh.valid || !old.valid) {
            margin = -1.0;
        }
        else if (equal) {
            margin = kIdentityTol - std::abs(diff);
        }
        else {
            margin = strict_margin(diff);
        }
        t.record(margin, [&] { return ps.to_flags(); });
    }
    return t.finish();
}

PropertyOutcome check_prop2(const VerifyConfig& cfg, Prop2Case which)
{
    Sampler s(cfg.seed ^ (0x60ULL + static_cast<std::uint64_t>(which)));
    Tracker t(fmt::format("prop2_case{}_comparison", static_cast<int>(which)));
    for (std::size_t n = 0; n < cfg.sweep_sets; ++n) {
        const bool boundary = n % 4 == 0;
        const auto ps = s.prop2(which, boundary);
        const auto cmp = prop2_rates(which, ps.f, ps.g, ps.h, ps.params);
        double margin = 0.0;
        if (!cmp.old_rate.valid || !cmp.new_rate.valid) {
            margin = -1.0;
        }
        else {
            const double diff = cmp.old_rate.rho() - cmp.new_rate.rho();
            if (boundary) {
                margin = kIdentityTol - std::abs(diff);
            }
            else if (cmp.strict_expected) {
                margin = strict_margin(diff);
            }
            else {
                margin = diff + kIdentityTol;
            }
        }
        t.record(margin, [&] { return ps.to_flags(); });
    }
    return t.finish();
}

PropertyOutcome check_theorem2_radicands(const VerifyConfig& cfg)
{
    Sampler s(cfg.seed ^ 0x57ULL);
    Tracker t("theorem2_radicand_nonnegative");
    for (std::size_t n = 0; n < cfg.sweep_sets; ++n) {
        const auto ps = s.generic();
        const auto r = theorem2_rate(ps.f, ps.g, ps.h, ps.params);
        if (!r.breakdown.theta) {
            continue;
        }
        const double a = ps.params.alpha;
        const double margin =
            std::min(*r.breakdown.theta - a * *r.breakdown.nu_f,
                     *r.breakdown.theta - a * *r.breakdown.nu_g) +
            kIdentityTol;
        t.record(margin, [&] { return ps.to_flags(); });
    }
    return t.finish();
}

PropertyOutcome check_lambda_limit(const VerifyConfig& cfg)
{
    Sampler s(cfg.seed ^ 0x58ULL);
    Tracker t("rates_tend_to_one_as_lambda_vanishes");
    for (std::size_t n = 0; n < 100; ++n) {
        auto ps = s.generic();
        const AlgoParams tiny(ps.params.alpha, 1e-12);
        const auto t1 = theorem1_rates(ps.f, ps.g, ps.h, tiny);
        const auto t2 = theorem2_rate(ps.f, ps.g, ps.h, tiny);
        // theorem2_rho has an empty lambda range once alpha(mu_h + L_h) >= 4.
        const bool t2_applies = ps.params.alpha * (ps.h.mu() + ps.h.L().value()) < 4.0;
        double margin = std::numeric_limits<double>::infinity();
        for (const auto* r : {&t1.rho_f, &t1.rho_g, &t2}) {
            if (r == &t2 && !t2_applies) {
                continue;
            }
            margin = std::min(margin, r->valid ? 1e-9 - std::abs(r->rho() - 1.0) : -1.0);
        }
        t.record(margin, [&] {
            return ParameterSet{ps.f, ps.g, ps.h, tiny}.to_flags();
        });
    }
    return t.finish();
}

PropertyOutcome check_r_optimized(const VerifyConfig& cfg)
{
    Sampler s(cfg.seed ^ 0x59ULL);
    Tracker t("r_optimized_not_worse_than_theorem1");
    for (std::size_t n = 0; n < cfg.sweep_sets; ++n) {
        const auto ps = s.generic();
        const auto ropt = r_optimized_rate(ps.f, ps.g, ps.h, ps.params);
        const auto t1 = theorem1_rates(ps.f, ps.g, ps.h, ps.params);
        for (const auto* r : {&t1.rho_f, &t1.rho_g}) {
            if (r->valid) {
                t.record(r->rho() + kIdentityTol - ropt.rho(),
                         [&] { return ps.to_flags(); });
            }
        }
    }
    return t.finish();
}

PropertyOutcome check_r_search_vs_grid(const VerifyConfig& cfg)
{
    Sampler s(cfg.seed ^ 0x5aULL);
    Tracker t("r_search_matches_log_grid_scan");
    constexpr std::size_t kGrid = 10000;
    const double lo = std::log(1e-6);
    const double hi = std::log(1e6);
    for (std::size_t n = 0; n < 50; ++n) {
        const auto ps = s.generic();
        const auto ropt = r_optimized_rate(ps.f, ps.g, ps.h, ps.params);
        double grid_min = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < kGrid; ++m) {
            const double lr = lo + (hi - lo) * static_cast<double>(m) / (kGrid - 1);
            grid_min = std::min(
                grid_min, r_split_objective(ps.f, ps.g, ps.h, ps.params, std::exp(lr)));
        }
        // The search must never lose to the grid by more than 1e-6. The
        // grid itself can sit well above a kinked minimum.
        const double rel = (grid_min - ropt.rho_sq) / grid_min;
        t.record(rel + 1e-6, [&] { return ps.to_flags(); });
    }
    return t.finish();
}

void check_soundness(const VerifyConfig& cfg, std::vector<PropertyOutcome>& out)
{
    Sampler s(cfg.seed ^ 0x5bULL);
    Tracker sampled("soundness_vs_sampled_sup");
    Tracker empirical("soundness_vs_quadratic_instances");
    for (std::size_t n = 0; n < cfg.soundness_sets; ++n) {
        const auto ps = s.mixed();
        const auto table = cfg.rate_table(ps.f, ps.g, ps.h, ps.params);
        const auto est =
            estimate_sup_modulus(ps.f, ps.g, ps.h, ps.params, cfg.grid_n);
        const auto emp = empirical_lipschitz(ps.f, ps.g, ps.h, ps.params);
        for (const auto& row : table) {
            if (!row.valid) {
                continue;
            }
            auto witness = [&] {
                return fmt::format("{} [{}]", ps.to_flags(), to_string(row.name));
            };
            sampled.record(row.rho() + kSoundnessSlack - est.sup_modulus, witness);
            empirical.record(row.rho() + kSoundnessSlack - emp.sup_norm, witness);
        }
    }
    out.push_back(sampled.finish());
    out.push_back(empirical.finish());
}

}  // namespace

std::string ParameterSet::to_flags() const
{
    return fmt::format(
        "--mu_f {} --L_f {} --mu_g {} --L_g {} --mu_h {} --L_h {} --alpha {} "
        "--lambda {}",
        fmt_num(f.mu()), f.is_smooth() ? fmt_num(f.L().value()) : "inf",
        fmt_num(g.mu()), g.is_smooth() ? fmt_num(g.L().value()) : "inf",
        fmt_num(h.mu()), h.is_smooth() ? fmt_num(h.L().value()) : "inf",
        fmt_num(params.alpha), fmt_num(params.lambda));
}

bool VerifyReport::all_passed() const
{
    return std::all_of(properties.begin(), properties.end(),
                       [](const PropertyOutcome& p) { return p.passed; });
}

VerifyReport run_verification(const VerifyConfig& config)
{
    VerifyReport report;
    report.seed = config.seed;
    auto& props = report.properties;
    props.push_back(check_cauchy_schwarz(config));
    props.push_back(check_circle_quadratic(config));
    props.push_back(check_max_modulus(config));
    props.push_back(check_conjugate_symmetry(config));
    props.push_back(check_symbol_identity(config));
    props.push_back(check_prop1(config));
    props.push_back(check_prop2(config, Prop2Case::one));
    props.push_back(check_prop2(config, Prop2Case::two));
    props.push_back(check_prop2(config, Prop2Case::three));
    props.push_back(check_theorem2_radicands(config));
    props.push_back(check_lambda_limit(config));
    props.push_back(check_r_optimized(config));
    props.push_back(check_r_search_vs_grid(config));
    check_soundness(config, props);
    return report;
}

std::string format_report(const VerifyReport& report)
{
    std::string text = fmt::format("verification seed={}\n", report.seed);
    for (const auto& p : report.properties) {
        text += fmt::format("{} {} cases={} worst_margin={:.6e}\n",
                            p.passed ? "PASS" : "FAIL", p.name, p.cases,
                            p.worst_margin + 0.0);
        if (!p.passed) {
            text += fmt::format("  witness: {}\n", p.witness);
        }
    }
    text += fmt::format("{}\n", report.all_passed() ? "ALL PASS" : "FAILURES");
    return text;
}

}  // namespace dyscert
