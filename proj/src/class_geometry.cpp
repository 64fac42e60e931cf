#include "dyscert/class_geometry.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace dyscert {

Smoothness Smoothness::finite(double value)
{
    if (!std::isfinite(value) || value < 0.0) {
        throw DomainError(fmt::format(
            "smoothness modulus must be a finite nonnegative number, got {}",
            value));
    }
    Smoothness s;
    s.value_ = value;
    return s;
}

double Smoothness::value() const
{
    if (!value_) {
        throw DomainError("smoothness modulus is infinite");
    }
    return *value_;
}

Smoothness Smoothness::parse(const std::string& text)
{
    if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") {
        return infinite();
    }
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw DomainError(fmt::format("cannot parse '{}' as a number or 'inf'",
                                      text));
    }
    return finite(v);
}

std::string Smoothness::to_string() const
{
    return value_ ? fmt::format("{}", *value_) : std::string("inf");
}

FunctionClass::FunctionClass(double mu, Smoothness L) : mu_{mu}, L_{L}
{
    if (!std::isfinite(mu) || mu < 0.0) {
        throw DomainError(
            fmt::format("strong convexity modulus must be >= 0, got {}", mu));
    }
    if (L_.is_finite() && L_.value() < mu) {
        throw DomainError(fmt::format(
            "strong convexity modulus {} exceeds smoothness modulus {}", mu,
            L_.value()));
    }
}

FunctionClass FunctionClass::checked(double mu, Smoothness L,
                                     const std::string& suffix)
{
    if (!std::isfinite(mu) || mu < 0.0) {
        throw DomainError(
            fmt::format("mu_{} must be a finite number >= 0, got {}", suffix,
                        mu));
    }
    if (L.is_finite() && L.value() < mu) {
        throw DomainError(fmt::format(
            "mu_{0} must not exceed L_{0} (got mu_{0} = {1}, L_{0} = {2})",
            suffix, mu, L.value()));
    }
    return FunctionClass(mu, L);
}

AlgoParams::AlgoParams(double alpha_, double lambda_)
    : alpha{alpha_}, lambda{lambda_}
{
    if (!(std::isfinite(alpha) && alpha > 0.0)) {
        throw DomainError(fmt::format("alpha must be > 0, got {}", alpha));
    }
    if (!(std::isfinite(lambda) && lambda > 0.0)) {
        throw DomainError(fmt::format("lambda must be > 0, got {}", lambda));
    }
}

CircleSpec::CircleSpec(double center_, double radius_)
    : center{center_}, radius{radius_}
{
    if (!(radius >= 0.0) || !std::isfinite(radius) || !std::isfinite(center)) {
        throw DomainError(fmt::format(
            "circle needs finite center and radius >= 0, got ({}, {})", center,
            radius));
    }
}

double resolvent_gain(double alpha, double curvature)
{
    return 1.0 / (1.0 + alpha * curvature);
}

double resolvent_gain(double alpha, const Smoothness& curvature)
{
    return curvature.is_finite() ? resolvent_gain(alpha, curvature.value())
                                 : 0.0;
}

double curvature_weight(double alpha, double curvature, double offset)
{
    const double den = 1.0 + alpha * curvature;
    return (2.0 * curvature + offset) / (den * den);
}

double curvature_weight(double alpha, const Smoothness& curvature,
                        double offset)
{
    return curvature.is_finite()
               ? curvature_weight(alpha, curvature.value(), offset)
               : 0.0;
}

CircleSpec resolvent_srg(const FunctionClass& cls, double alpha)
{
    if (!(alpha > 0.0)) {
        throw DomainError(fmt::format("alpha must be > 0, got {}", alpha));
    }
    const double hi = resolvent_gain(alpha, cls.mu());
    const double lo = resolvent_gain(alpha, cls.L());
    return {0.5 * (hi + lo), 0.5 * (hi - lo)};
}

CircleSpec gradient_srg(const FunctionClass& cls)
{
    if (!cls.is_smooth()) {
        throw DomainError("gradient SRG requires finite smoothness");
    }
    const double L = cls.L().value();
    return {0.5 * (cls.mu() + L), 0.5 * (L - cls.mu())};
}

double sample_angle(std::size_t k, std::size_t n)
{
    // k/n first so that nested power-of-two grids reproduce identical angles.
    return 2.0 * std::numbers::pi *
           (static_cast<double>(k) / static_cast<double>(n));
}

std::vector<std::complex<double>> sample_circle_boundary(const CircleSpec& c,
                                                         std::size_t n)
{
    if (n == 0) {
        throw DomainError("boundary sample count must be >= 1");
    }
    std::vector<std::complex<double>> points;
    points.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        points.push_back(c.center + std::polar(c.radius, sample_angle(k, n)));
    }
    return points;
}

}  // namespace dyscert
