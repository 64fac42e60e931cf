#ifndef DYSCERT_DYS_ENGINE_HPP
#define DYSCERT_DYS_ENGINE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dyscert/class_geometry.hpp"

namespace dyscert {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// f(x) = 1/2 sum_i c_i x_i^2 + sum_i b_i x_i with c_i >= 0.
struct QuadraticSpec {
    Vector curvatures;
    Vector linear;

    QuadraticSpec(Vector curvatures_, Vector linear_);
    /// Homogeneous quadratic (zero linear term).
    static QuadraticSpec homogeneous(Vector curvatures);

    Eigen::Index dim() const { return curvatures.size(); }
    bool is_homogeneous() const;
    /// Whether every curvature lies in [mu, L].
    bool belongs_to(const FunctionClass& cls) const;
    /// Tightest class containing this quadratic: [min c_i, max c_i].
    FunctionClass tightest_class() const;

    double value(const Vector& x) const;
    Vector gradient(const Vector& x) const;
};

struct DysInstance {
    QuadraticSpec f;
    QuadraticSpec g;
    QuadraticSpec h;
    AlgoParams params;

    DysInstance(QuadraticSpec f_, QuadraticSpec g_, QuadraticSpec h_,
                AlgoParams params_);
    Eigen::Index dim() const { return f.dim(); }
};

/// argmin_y { alpha q(y) + 1/2 ||x - y||^2 }, componentwise
/// (x_i - alpha b_i)/(1 + alpha c_i).
Vector prox_quadratic(const QuadraticSpec& q, double alpha, const Vector& x);

/// T z = z - lambda u + lambda v with u = Prox_{alpha g}(z) and
/// v = Prox_{alpha f}(2u - z - alpha grad h(u)).
Vector dys_apply(const DysInstance& inst, const Vector& z);

/// Diagonal matrix of T for a homogeneous instance; throws DomainError
/// otherwise.
Matrix dys_linear_map(const DysInstance& inst);

/// Spectral norm (largest singular value).
double operator_norm(const Matrix& m);

struct EmpiricalConfig {
    /// Infinite smoothness moduli are replaced by this value in sweeps.
    double infinity_cap = 1e4;
    /// Interior curvature samples per class, between the two endpoints.
    std::size_t interior_points = 9;
};

struct EmpiricalLipschitz {
    double sup_norm = 0.0;
    DysInstance witness;
    /// True when some infinite modulus was replaced by the cap.
    bool clamped = false;
    std::size_t instances = 0;
};

/// Curvature grid used by empirical_lipschitz: endpoints plus evenly spaced
/// interior values, duplicates removed.
std::vector<double> curvature_grid(const FunctionClass& cls,
                                   const EmpiricalConfig& config);

/**
 * Largest |T x - T y| / |x - y| over 1-D homogeneous quadratic instances
 * whose curvatures range over the class grids. A lower bound on the
 * Lipschitz constant over the class; ties keep the first instance found
 * (f outer, g middle, h inner).
 */
EmpiricalLipschitz empirical_lipschitz(const FunctionClass& f,
                                       const FunctionClass& g,
                                       const FunctionClass& h,
                                       const AlgoParams& params,
                                       const EmpiricalConfig& config = {});

struct IterationLog {
    std::vector<Vector> iterates;
    /// ||z_{k+1} - z_k||
    std::vector<double> residuals;
    /// ||T z_k - T w_k|| / ||z_k - w_k||
    std::vector<double> pair_ratios;
};

/// Runs z_{k+1} = T z_k alongside a companion w_{k+1} = T w_k. Stops early
/// once a residual drops below `residual_tol`, if given.
IterationLog run_iteration(const DysInstance& inst, const Vector& z0,
                           const Vector& w0, std::size_t iters,
                           std::optional<double> residual_tol = std::nullopt);

/// z0 plus a unit vector drawn from a seeded generator.
Vector companion_start(const Vector& z0, std::uint64_t seed);

}  // namespace dyscert

#endif  // DYSCERT_DYS_ENGINE_HPP
