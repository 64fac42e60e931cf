#include "dyscert/symbol_sampling.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <fmt/format.h>

namespace dyscert {

namespace {

// Real-arithmetic evaluation shared by zeta_dys and the grid sweep so that
// both produce bit-identical values.
inline Complex zeta_core(Complex zf, Complex zg, Complex zh, double alpha,
                         double lambda)
{
    const double t_re = zh.real() * zg.real() - zh.imag() * zg.imag();
    const double t_im = zh.real() * zg.imag() + zh.imag() * zg.real();
    const double in_re = (2.0 * zg.real() - 1.0) - alpha * t_re;
    const double in_im = 2.0 * zg.imag() - alpha * t_im;
    const double w_re = zf.real() * in_re - zf.imag() * in_im;
    const double w_im = zf.real() * in_im + zf.imag() * in_re;
    return {(1.0 - lambda * zg.real()) + lambda * w_re,
            -lambda * zg.imag() + lambda * w_im};
}

inline double modulus_of(Complex v) { return std::sqrt(std::norm(v)); }

struct Best {
    double norm = -1.0;
    std::size_t flat = 0;
};

// Lower norm loses; equal norms keep the lower flat index.
inline bool better(const Best& a, const Best& b)
{
    return a.norm > b.norm || (a.norm == b.norm && a.flat < b.flat);
}

SymbolPoint make_point(Complex zf, Complex zg, Complex zh,
                       const AlgoParams& params,
                       std::array<std::size_t, 3> index,
                       std::array<double, 3> angles)
{
    SymbolPoint p;
    p.z_f = zf;
    p.z_g = zg;
    p.z_h = zh;
    p.value = zeta_core(zf, zg, zh, params.alpha, params.lambda);
    p.modulus = modulus_of(p.value);
    p.grid_index = index;
    p.angles = angles;
    return p;
}

void require_grid(std::size_t grid_n)
{
    if (grid_n == 0) {
        throw DomainError("grid_n must be >= 1");
    }
}

}  // namespace

Complex zeta_dys(Complex z_f, Complex z_g, Complex z_h,
                 const AlgoParams& params)
{
    return zeta_core(z_f, z_g, z_h, params.alpha, params.lambda);
}

SymbolCircles symbol_circles(const FunctionClass& f, const FunctionClass& g,
                             const FunctionClass& h, double alpha)
{
    return {resolvent_srg(f, alpha), resolvent_srg(g, alpha), gradient_srg(h)};
}

SupEstimate estimate_sup_modulus(const FunctionClass& f,
                                 const FunctionClass& g,
                                 const FunctionClass& h,
                                 const AlgoParams& params, std::size_t grid_n,
                                 const SamplingOptions& options)
{
    require_grid(grid_n);
    const auto circles = symbol_circles(f, g, h, params.alpha);
    const auto zf = sample_circle_boundary(circles.f, grid_n);
    const auto zg = sample_circle_boundary(circles.g, grid_n);
    const auto zh = sample_circle_boundary(circles.h, grid_n);
    const double alpha = params.alpha;
    const double lambda = params.lambda;
    const std::size_t n = grid_n;

    auto sweep = [&](std::size_t i_begin, std::size_t i_end) {
        Best best;
        for (std::size_t i = i_begin; i < i_end; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t base = (i * n + j) * n;
                for (std::size_t k = 0; k < n; ++k) {
                    const double v =
                        std::norm(zeta_core(zf[i], zg[j], zh[k], alpha, lambda));
                    if (v > best.norm) {
                        best = {v, base + k};
                    }
                }
            }
        }
        return best;
    };

    unsigned threads = options.threads;
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, n));

    Best best;
    if (threads <= 1) {
        best = sweep(0, n);
    } else {
        std::vector<Best> partial(threads);
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t lo = n * t / threads;
            const std::size_t hi = n * (t + 1) / threads;
            pool.emplace_back([&, t, lo, hi] { partial[t] = sweep(lo, hi); });
        }
        for (auto& th : pool) {
            th.join();
        }
        for (const auto& p : partial) {
            if (better(p, best)) {
                best = p;
            }
        }
    }

    const std::size_t i = best.flat / (n * n);
    const std::size_t j = (best.flat / n) % n;
    const std::size_t k = best.flat % n;
    SupEstimate est;
    est.grid_n = n;
    est.argmax = make_point(zf[i], zg[j], zh[k], params, {i, j, k},
                            {sample_angle(i, n), sample_angle(j, n),
                             sample_angle(k, n)});

    if (options.refine) {
        constexpr std::size_t m = 64;
        const double step = sample_angle(1, n);
        std::array<std::vector<Complex>, 3> local;
        std::array<std::vector<double>, 3> local_angle;
        const std::array<const CircleSpec*, 3> circ{&circles.f, &circles.g,
                                                    &circles.h};
        for (std::size_t c = 0; c < 3; ++c) {
            for (std::size_t s = 0; s < m; ++s) {
                const double phi =
                    est.argmax.angles[c] +
                    step * (-1.0 + 2.0 * static_cast<double>(s) /
                                       static_cast<double>(m - 1));
                local_angle[c].push_back(phi);
                local[c].push_back(circ[c]->center +
                                   std::polar(circ[c]->radius, phi));
            }
        }
        Best lb;
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) {
                for (std::size_t c = 0; c < m; ++c) {
                    const double v = std::norm(zeta_core(
                        local[0][a], local[1][b], local[2][c], alpha, lambda));
                    if (v > lb.norm) {
                        lb = {v, (a * m + b) * m + c};
                    }
                }
            }
        }
        const std::size_t a = lb.flat / (m * m);
        const std::size_t b = (lb.flat / m) % m;
        const std::size_t c = lb.flat % m;
        auto candidate = make_point(
            local[0][a], local[1][b], local[2][c], params, {i, j, k},
            {local_angle[0][a], local_angle[1][b], local_angle[2][c]});
        if (candidate.modulus > est.argmax.modulus) {
            est.argmax = candidate;
            est.refined = true;
        }
    }

    est.sup_modulus = est.argmax.modulus;
    return est;
}

std::vector<SymbolPoint> export_symbol_cloud(const FunctionClass& f,
                                             const FunctionClass& g,
                                             const FunctionClass& h,
                                             const AlgoParams& params,
                                             std::size_t grid_n)
{
    require_grid(grid_n);
    const auto circles = symbol_circles(f, g, h, params.alpha);
    const auto zf = sample_circle_boundary(circles.f, grid_n);
    const auto zg = sample_circle_boundary(circles.g, grid_n);
    const auto zh = sample_circle_boundary(circles.h, grid_n);
    std::vector<SymbolPoint> cloud;
    cloud.reserve(grid_n * grid_n * grid_n);
    for (std::size_t i = 0; i < grid_n; ++i) {
        for (std::size_t j = 0; j < grid_n; ++j) {
            for (std::size_t k = 0; k < grid_n; ++k) {
                cloud.push_back(make_point(
                    zf[i], zg[j], zh[k], params, {i, j, k},
                    {sample_angle(i, grid_n), sample_angle(j, grid_n),
                     sample_angle(k, grid_n)}));
            }
        }
    }
    return cloud;
}

CircleQuadraticMax circle_quadratic_max(double k, double l, double b,
                                        const CircleSpec& circle)
{
    if (k < 0.0 || l < 0.0 || (k == 0.0 && l == 0.0)) {
        throw DomainError(fmt::format(
            "circle_quadratic_max needs k, l >= 0 not both zero, got ({}, {})",
            k, l));
    }
    auto objective = [&](double z) {
        return k * (z - b) * (z - b) + l * z * z;
    };
    const double left = circle.leftmost();
    const double right = circle.rightmost();
    const double v_left = objective(left);
    const double v_right = objective(right);
    if (v_right >= v_left) {
        return {Complex{right, 0.0}, v_right};
    }
    return {Complex{left, 0.0}, v_left};
}

}  // namespace dyscert
