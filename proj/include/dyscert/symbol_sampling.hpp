#ifndef DYSCERT_SYMBOL_SAMPLING_HPP
#define DYSCERT_SYMBOL_SAMPLING_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "dyscert/class_geometry.hpp"

namespace dyscert {

using Complex = std::complex<double>;

/// zeta(z_f, z_g, z_h) = 1 - lambda z_g + lambda z_f (2 z_g - 1 - alpha z_h z_g)
Complex zeta_dys(Complex z_f, Complex z_g, Complex z_h,
                 const AlgoParams& params);

/// The three boundary circles the symbol is sampled over.
struct SymbolCircles {
    CircleSpec f;  // resolvent of f
    CircleSpec g;  // resolvent of g
    CircleSpec h;  // gradient of h
};

SymbolCircles symbol_circles(const FunctionClass& f, const FunctionClass& g,
                             const FunctionClass& h, double alpha);

struct SymbolPoint {
    Complex z_f;
    Complex z_g;
    Complex z_h;
    Complex value;
    double modulus = 0.0;
    /// Angular indices (phi_f, phi_g, phi_h) on the sampling grid.
    std::array<std::size_t, 3> grid_index{};
    /// Angles in radians; equal to sample_angle(grid_index, grid_n) except
    /// for points found by the local refinement pass.
    std::array<double, 3> angles{};
};

struct SupEstimate {
    double sup_modulus = 0.0;
    SymbolPoint argmax;
    std::size_t grid_n = 0;
    bool refined = false;
};

struct SamplingOptions {
    /// Worker threads for the outer angle loop; 0 means hardware concurrency.
    unsigned threads = 0;
    /// Adds one local 64^3 grid spanning +-one grid step around the argmax.
    bool refine = false;
};

inline constexpr std::size_t kDefaultGridN = 256;

/**
 * Maximum of |zeta| over grid_n uniformly spaced angles on each of the three
 * boundary circles (grid_n^3 triples). The result is a lower bound on the
 * supremum over the SRG product set. Ties are resolved toward the lowest
 * flat index (phi_f outer, phi_h inner) regardless of thread count.
 */
SupEstimate estimate_sup_modulus(const FunctionClass& f,
                                 const FunctionClass& g,
                                 const FunctionClass& h,
                                 const AlgoParams& params,
                                 std::size_t grid_n = kDefaultGridN,
                                 const SamplingOptions& options = {});

/// Full grid in row-major order (phi_f outer, phi_g middle, phi_h inner).
std::vector<SymbolPoint> export_symbol_cloud(const FunctionClass& f,
                                             const FunctionClass& g,
                                             const FunctionClass& h,
                                             const AlgoParams& params,
                                             std::size_t grid_n);

struct CircleQuadraticMax {
    Complex argmax;
    double value = 0.0;
};

/// max over z on the circle of k|z - b|^2 + l|z|^2, attained at one of the
/// two real points; ties go to center + radius.
CircleQuadraticMax circle_quadratic_max(double k, double l, double b,
                                        const CircleSpec& circle);

}  // namespace dyscert

#endif  // DYSCERT_SYMBOL_SAMPLING_HPP
