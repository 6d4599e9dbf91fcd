#include "rionset/model.hpp"

#include <string>

#include "rionset/error.hpp"

namespace rionset {

void ModelParams::validate() const {
  const auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(p) || !positive(r) || !positive(s)) {
    throw DomainError("model parameters must be finite and > 0 (p=" +
                      std::to_string(p) + ", r=" + std::to_string(r) +
                      ", s=" + std::to_string(s) + ")");
  }
}

namespace {

void require_finite(const State& x) {
  if (!x.finite()) throw DomainError("state has a non-finite component");
}

}  // namespace

State drift(const ModelParams& params, const State& x) {
  params.validate();
  require_finite(x);
  return MsdDrift{params}(x);
}

Matrix3 jacobian(const ModelParams& params, const State& x) {
  params.validate();
  require_finite(x);
  const double p = params.p;
  Matrix3 a;
  a << -x.v, 2.0 * p * x.v - x.u, -(p + 1.0),
       -x.v, -x.u - 2.0 * x.v, 0.0,
       x.b + params.s, 1.0, x.u - params.r;
  return a;
}

}  // namespace rionset
