#include "visco2d/field.hpp"

#include <cmath>
#include <stdexcept>

namespace visco2d {

bool all_finite(const ScalarField& f) {
  for (double x : f.v)
    if (!std::isfinite(x)) return false;
  return true;
}

void require_finite(const ScalarField& f, const std::string& what) {
  if (!all_finite(f)) throw std::runtime_error("non-finite values in field: " + what);
}

void require_finite(const VectorField& f, const std::string& what) {
  require_finite(f.c1, what + ".c1");
  require_finite(f.c2, what + ".c2");
}

void require_finite(const SymTensorField& f, const std::string& what) {
  require_finite(f.a11, what + ".a11");
  require_finite(f.a12, what + ".a12");
  require_finite(f.a22, what + ".a22");
}

void require_finite(const Tensor2Field& f, const std::string& what) {
  require_finite(f.a11, what + ".a11");
  require_finite(f.a12, what + ".a12");
  require_finite(f.a21, what + ".a21");
  require_finite(f.a22, what + ".a22");
}

}  // namespace visco2d
