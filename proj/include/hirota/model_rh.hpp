#pragma once

#include "hirota/mat2.hpp"

namespace hirota {

cplx log_gamma(cplx z);
double arg_gamma(cplx z);  // principal arg of Gamma(z)

cplx beta_X(cplx q);
cplx beta_Y(cplx p);

// ray index 1..4: arguments pi/4, 3pi/4, -3pi/4, -pi/4
double ray_angle(int ray_index);

// e^{i z^2/2} z^{2 i nu}, arg z in [0, 2 pi)
cplx jx_phase(cplx z, double nu);
// e^{i z^2/2} (-z)^{2 i nu}, arg(-z) in (-2 pi, 0]
cplx jy_phase(cplx z, double nu);

Mat2 jump_JX(cplx q, cplx z, int ray_index);
Mat2 jump_JY(cplx p, cplx z, int ray_index);

}  // namespace hirota
