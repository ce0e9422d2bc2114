#pragma once

#include <functional>
#include <stdexcept>

namespace amgpoly {

class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Brent's bracketed zero finder (bisection + secant + inverse quadratic
/// interpolation). f(lo) and f(hi) must differ in sign; throws BracketError
/// otherwise. Terminates when the bracket is narrower than ~2*xtol.
double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  double xtol = 1e-15, int max_iter = 200);

}  // namespace amgpoly
