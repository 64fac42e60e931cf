#include "dyscert/dys_engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "dyscert/symbol_sampling.hpp"

namespace dyscert {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what)
{
    if (a != b) {
        throw DomainError(
            fmt::format("dimension mismatch in {}: {} vs {}", what, a, b));
    }
}

}  // namespace

QuadraticSpec::QuadraticSpec(Vector curvatures_, Vector linear_)
    : curvatures{std::move(curvatures_)}, linear{std::move(linear_)}
{
    require_same_dim(curvatures.size(), linear.size(), "quadratic");
    for (Eigen::Index i = 0; i < curvatures.size(); ++i) {
        if (!(std::isfinite(curvatures[i]) && curvatures[i] >= 0.0)) {
            throw DomainError(fmt::format(
                "curvature {} must be finite and >= 0, got {}", i,
                curvatures[i]));
        }
        if (!std::isfinite(linear[i])) {
            throw DomainError(fmt::format("linear term {} is not finite", i));
        }
    }
}

QuadraticSpec QuadraticSpec::homogeneous(Vector curvatures)
{
    Vector zero = Vector::Zero(curvatures.size());
    return {std::move(curvatures), std::move(zero)};
}

bool QuadraticSpec::is_homogeneous() const
{
    return (linear.array() == 0.0).all();
}

bool QuadraticSpec::belongs_to(const FunctionClass& cls) const
{
    for (Eigen::Index i = 0; i < curvatures.size(); ++i) {
        if (curvatures[i] < cls.mu()) {
            return false;
        }
        if (cls.is_smooth() && curvatures[i] > cls.L().value()) {
            return false;
        }
    }
    return true;
}

FunctionClass QuadraticSpec::tightest_class() const
{
    if (dim() == 0) {
        throw DomainError("empty quadratic has no curvature range");
    }
    return FunctionClass::smooth(curvatures.minCoeff(), curvatures.maxCoeff());
}

double QuadraticSpec::value(const Vector& x) const
{
    require_same_dim(dim(), x.size(), "quadratic value");
    return 0.5 * x.dot(curvatures.cwiseProduct(x)) + linear.dot(x);
}

Vector QuadraticSpec::gradient(const Vector& x) const
{
    require_same_dim(dim(), x.size(), "quadratic gradient");
    return curvatures.cwiseProduct(x) + linear;
}

DysInstance::DysInstance(QuadraticSpec f_, QuadraticSpec g_, QuadraticSpec h_,
                         AlgoParams params_)
    : f{std::move(f_)}, g{std::move(g_)}, h{std::move(h_)}, params{params_}
{
    require_same_dim(f.dim(), g.dim(), "instance (f, g)");
    require_same_dim(f.dim(), h.dim(), "instance (f, h)");
}

Vector prox_quadratic(const QuadraticSpec& q, double alpha, const Vector& x)
{
    require_same_dim(q.dim(), x.size(), "prox");
    return ((x - alpha * q.linear).array() /
            (1.0 + alpha * q.curvatures.array()))
        .matrix();
}

Vector dys_apply(const DysInstance& inst, const Vector& z)
{
    require_same_dim(inst.dim(), z.size(), "dys_apply");
    const double alpha = inst.params.alpha;
    const double lambda = inst.params.lambda;
    const Vector u = prox_quadratic(inst.g, alpha, z);
    const Vector v = prox_quadratic(
        inst.f, alpha, 2.0 * u - z - alpha * inst.h.gradient(u));
    return z - lambda * u + lambda * v;
}

Matrix dys_linear_map(const DysInstance& inst)
{
    if (!(inst.f.is_homogeneous() && inst.g.is_homogeneous() &&
          inst.h.is_homogeneous())) {
        throw DomainError("linear map requires homogeneous instance");
    }
    const double alpha = inst.params.alpha;
    Vector diag(inst.dim());
    for (Eigen::Index i = 0; i < inst.dim(); ++i) {
        const Complex symbol =
            zeta_dys(resolvent_gain(alpha, inst.f.curvatures[i]),
                     resolvent_gain(alpha, inst.g.curvatures[i]),
                     inst.h.curvatures[i], inst.params);
        diag[i] = symbol.real();
    }
    return diag.asDiagonal();
}

double operator_norm(const Matrix& m)
{
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().maxCoeff();
}

std::vector<double> curvature_grid(const FunctionClass& cls,
                                   const EmpiricalConfig& config)
{
    const double lo = cls.mu();
    const double hi = cls.is_smooth() ? cls.L().value()
                                      : std::max(lo, config.infinity_cap);
    if (hi == lo) {
        return {lo};
    }
    std::vector<double> grid;
    grid.reserve(config.interior_points + 2);
    grid.push_back(lo);
    const double steps = static_cast<double>(config.interior_points + 1);
    for (std::size_t m = 1; m <= config.interior_points; ++m) {
        grid.push_back(lo + (hi - lo) * static_cast<double>(m) / steps);
    }
    grid.push_back(hi);
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

EmpiricalLipschitz empirical_lipschitz(const FunctionClass& f,
                                       const FunctionClass& g,
                                       const FunctionClass& h,
                                       const AlgoParams& params,
                                       const EmpiricalConfig& config)
{
    if (!h.is_smooth()) {
        throw DomainError("empirical_lipschitz requires finite L_h");
    }
    const auto cf = curvature_grid(f, config);
    const auto cg = curvature_grid(g, config);
    const auto ch = curvature_grid(h, config);
    auto scalar = [](double c) { return QuadraticSpec::homogeneous(Vector::Constant(1, c)); };
    const Vector unit = Vector::Ones(1);

    EmpiricalLipschitz out{0.0,
                           DysInstance(scalar(cf[0]), scalar(cg[0]),
                                       scalar(ch[0]), params),
                           !f.is_smooth() || !g.is_smooth(), 0};
    double best = -1.0;
    for (double c_f : cf) {
        for (double c_g : cg) {
            for (double c_h : ch) {
                DysInstance inst(scalar(c_f), scalar(c_g), scalar(c_h), params);
                // Homogeneous and linear: |T(1) - T(0)| / |1 - 0| = |T(1)|.
                const double ratio = dys_apply(inst, unit).norm();
                ++out.instances;
                if (ratio > best) {
                    best = ratio;
                    out.witness = std::move(inst);
                }
            }
        }
    }
    out.sup_norm = best;
    return out;
}

IterationLog run_iteration(const DysInstance& inst, const Vector& z0,
                           const Vector& w0, std::size_t iters,
                           std::optional<double> residual_tol)
{
    require_same_dim(inst.dim(), z0.size(), "run_iteration z0");
    require_same_dim(inst.dim(), w0.size(), "run_iteration w0");
    if (iters == 0) {
        throw DomainError("iteration count must be >= 1");
    }
    IterationLog log;
    log.iterates.reserve(iters + 1);
    log.residuals.reserve(iters);
    log.pair_ratios.reserve(iters);
    Vector z = z0;
    Vector w = w0;
    log.iterates.push_back(z);
    for (std::size_t k = 0; k < iters; ++k) {
        Vector tz = dys_apply(inst, z);
        Vector tw = dys_apply(inst, w);
        const double gap = (z - w).norm();
        log.residuals.push_back((tz - z).norm());
        log.pair_ratios.push_back(gap > 0.0 ? (tz - tw).norm() / gap : 0.0);
        z = std::move(tz);
        w = std::move(tw);
        log.iterates.push_back(z);
        if (residual_tol && log.residuals.back() <= *residual_tol) {
            break;
        }
    }
    return log;
}

Vector companion_start(const Vector& z0, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector dir(z0.size());
    do {
        for (Eigen::Index i = 0; i < dir.size(); ++i) {
            dir[i] = normal(rng);
        }
    } while (dir.size() > 0 && dir.norm() == 0.0);
    if (dir.size() > 0) {
        dir /= dir.norm();
    }
    return z0 + dir;
}

}  // namespace dyscert
