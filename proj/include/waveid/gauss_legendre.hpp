#pragma once

#include <vector>

namespace waveid {

struct GaussLegendre {
  std::vector<double> nodes;    // ascending, in (-1, 1)
  std::vector<double> weights;
};

// Newton iteration on P_m; accurate to a few ulp for m up to a few hundred.
GaussLegendre gauss_legendre(int order);

}  // namespace waveid
