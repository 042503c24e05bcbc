#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcross {

// Root iteration failed to converge; carries whatever the solver had.
struct convergence_error : std::runtime_error {
  convergence_error(const std::string& what, std::vector<std::complex<double>> partial)
      : std::runtime_error(what), partial_roots(std::move(partial)) {}
  std::vector<std::complex<double>> partial_roots;
};

// A fit or solve produced residuals beyond the quality gate; the sample that
// triggered it should be discarded, not patched.
struct ill_conditioned_error : std::runtime_error {
  ill_conditioned_error(const std::string& what, double residual_)
      : std::runtime_error(what), residual(residual_) {}
  double residual;
};

}  // namespace lcross
