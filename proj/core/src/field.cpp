#include "dualvc/field.hpp"

#include <cmath>
#include <stdexcept>

namespace dualvc::float_backend {

double value(const RadicalValue& x) { return x.to_double(); }

int sign(const RadicalValue& x, double tau) {
  const double approx = x.to_double();
  if (std::fabs(approx) > tau) return approx > 0 ? 1 : -1;
  return x.sign();
}

double step_value(int q, const Alpha& alpha, int q_max) {
  if (q < 0 || q > q_max) throw std::out_of_range("step exponent outside [0, q_max]");
  return std::pow(static_cast<double>(alpha.value), q / 4.0);
}

}  // namespace dualvc::float_backend
