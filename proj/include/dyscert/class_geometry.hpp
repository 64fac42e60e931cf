#ifndef DYSCERT_CLASS_GEOMETRY_HPP
#define DYSCERT_CLASS_GEOMETRY_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyscert {

/// Raised when user-supplied parameters violate a type invariant.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Smoothness modulus L of a function class. Either a finite nonnegative
 * number or the distinguished infinite value (no smoothness assumption).
 * The infinite case never enters arithmetic as a float; callers go through
 * resolvent_gain() and curvature_weight() below.
 */
class Smoothness {
public:
    static Smoothness infinite() { return Smoothness{}; }
    static Smoothness finite(double value);

    bool is_finite() const { return value_.has_value(); }
    /// Throws DomainError for the infinite modulus.
    double value() const;

    /// Parses a decimal literal or "inf".
    static Smoothness parse(const std::string& text);
    std::string to_string() const;

    friend bool operator==(const Smoothness&, const Smoothness&) = default;

private:
    Smoothness() = default;
    std::optional<double> value_;
};

/// The class F_{mu,L} of mu-strongly convex, L-smooth CCP functions.
class FunctionClass {
public:
    /// Requires 0 <= mu <= L; mu == L is the degenerate single-curvature class.
    FunctionClass(double mu, Smoothness L);

    static FunctionClass smooth(double mu, double L)
    {
        return FunctionClass(mu, Smoothness::finite(L));
    }
    static FunctionClass nonsmooth(double mu)
    {
        return FunctionClass(mu, Smoothness::infinite());
    }

    double mu() const { return mu_; }
    const Smoothness& L() const { return L_; }
    bool is_smooth() const { return L_.is_finite(); }

    /// Same as the constructor but names the offending parameters
    /// (e.g. "mu_f"/"L_f") in the error message.
    static FunctionClass checked(double mu, Smoothness L,
                                 const std::string& suffix);

private:
    double mu_;
    Smoothness L_;
};

/// Stepsize alpha and averaging parameter lambda, both positive.
struct AlgoParams {
    double alpha;
    double lambda;

    AlgoParams(double alpha_, double lambda_);
};

/// Circle Circ(center, radius) with a real center.
struct CircleSpec {
    double center;
    double radius;

    CircleSpec(double center_, double radius_);
    double leftmost() const { return center - radius; }
    double rightmost() const { return center + radius; }
};

/// 1/(1 + alpha*c); evaluates to 0 for infinite c.
double resolvent_gain(double alpha, const Smoothness& curvature);
double resolvent_gain(double alpha, double curvature);

/// (2c + offset)/(1 + alpha*c)^2; evaluates to 0 for infinite c.
double curvature_weight(double alpha, const Smoothness& curvature,
                        double offset);
double curvature_weight(double alpha, double curvature, double offset);

/// Boundary of the SRG of Prox_{alpha f} over f in the class.
CircleSpec resolvent_srg(const FunctionClass& cls, double alpha);

/// Boundary of the SRG of grad h over h in the class (requires finite L).
CircleSpec gradient_srg(const FunctionClass& cls);

/// Angle of the k-th of n uniform samples, 2*pi*k/n.
double sample_angle(std::size_t k, std::size_t n);

/// n points center + radius*exp(i*2*pi*k/n), k = 0..n-1.
std::vector<std::complex<double>> sample_circle_boundary(const CircleSpec& c,
                                                         std::size_t n);

}  // namespace dyscert

#endif  // DYSCERT_CLASS_GEOMETRY_HPP
