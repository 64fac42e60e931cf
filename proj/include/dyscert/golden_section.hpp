#ifndef DYSCERT_GOLDEN_SECTION_HPP
#define DYSCERT_GOLDEN_SECTION_HPP

#include <cmath>
#include <cstddef>
#include <utility>

namespace dyscert {

struct GoldenMinimum {
    double x;
    double value;
    std::size_t iterations;
};

/// Golden-section search for a minimum of a unimodal `fn` on [a, b]; stops
/// once the bracket is narrower than `tol`. The best evaluated point is
/// returned, so the result never exceeds the value at either probe.
template <typename Fn>
GoldenMinimum golden_section_minimize(Fn&& fn, double a, double b, double tol,
                                      std::size_t max_iterations = 500)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    if (b < a) {
        std::swap(a, b);
    }
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fn(c);
    double fd = fn(d);
    std::size_t it = 0;
    while (b - a > tol && it < max_iterations) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
        }
        else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
        }
        ++it;
    }
    return fc <= fd ? GoldenMinimum{c, fc, it} : GoldenMinimum{d, fd, it};
}

}  // namespace dyscert

#endif  // DYSCERT_GOLDEN_SECTION_HPP
