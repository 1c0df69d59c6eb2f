#pragma once

// Hand-coded closed forms used as independent oracles. Each evaluator takes
// plain numbers and mirrors one printed corner equation or three-leg display;
// none of them go through the chain/forms machinery they are checked against.

namespace oracle {

// Four-leg corner value at the center x_ij of the octahedron [ijkl] for the
// log family: (a^i-a^k)/(x_ij-x_jk) - (a^i-a^l)/(x_ij-x_jl)
//           - (a^j-a^k)/(x_ij-x_ik) + (a^j-a^l)/(x_ij-x_il).
inline double log_family_corner_ij(double ai, double aj, double ak, double al, double xij,
                                   double xik, double xil, double xjk, double xjl) {
  return (ai - ak) / (xij - xjk) - (ai - al) / (xij - xjl) - (aj - ak) / (xij - xik) +
         (aj - al) / (xij - xil);
}

// Mixed family on the octahedron [0123], center x_0j, cyclic (j,k,l):
// -x_jk + x_jl - (a^j-a^k)/(x_0j-x_0k) + (a^j-a^l)/(x_0j-x_0l).
inline double mixed_corner_0j(double aj, double ak, double al, double x0j, double x0k,
                              double x0l, double xjk, double xjl) {
  return -xjk + xjl - (aj - ak) / (x0j - x0k) + (aj - al) / (x0j - x0l);
}

// Mixed family, center x_kl, cyclic (j,k,l):
// x_0l - (a^j-a^k)/(x_jl-x_kl) - x_0k + (a^j-a^l)/(x_jk-x_kl).
inline double mixed_corner_kl(double aj, double ak, double al, double x0k, double x0l,
                              double xjk, double xjl, double xkl) {
  return x0l - (aj - ak) / (xjl - xkl) - x0k + (aj - al) / (xjk - xkl);
}

// Cube corner for the log family pushed along the first direction, center
// x_j: (a^i-a^k)/(x_j-x_jk) - (a^i-a^l)/(x_j-x_jl)
//    - (a^j-a^k)/(x_j-x_k) + (a^j-a^l)/(x_j-x_l).
inline double log_cube_corner_j(double ai, double aj, double ak, double al, double xj,
                                double xk, double xl, double xjk, double xjl) {
  return (ai - ak) / (xj - xjk) - (ai - al) / (xj - xjl) - (aj - ak) / (xj - xk) +
         (aj - al) / (xj - xl);
}

// Same, center x_kl: (a^i-a^k)/(x_l-x_kl) - (a^j-a^k)/(x_jl-x_kl)
//                  - (a^i-a^l)/(x_k-x_kl) + (a^j-a^l)/(x_jk-x_kl).
inline double log_cube_corner_kl(double ai, double aj, double ak, double al, double xk,
                                 double xl, double xjk, double xjl, double xkl) {
  return (ai - ak) / (xl - xkl) - (aj - ak) / (xjl - xkl) - (ai - al) / (xk - xkl) +
         (aj - al) / (xjk - xkl);
}

// Mixed family pushed along direction 0 (cube on directions {1,2,3}),
// center x_j, cyclic (j,k,l):
// -x_jk + x_jl - (a^j-a^k)/(x_j-x_k) + (a^j-a^l)/(x_j-x_l).
inline double kdv_cube_corner_j(double aj, double ak, double al, double xj, double xk,
                                double xl, double xjk, double xjl) {
  return -xjk + xjl - (aj - ak) / (xj - xk) + (aj - al) / (xj - xl);
}

// center x_kl: x_l - (a^j-a^k)/(x_jl-x_kl) - x_k + (a^j-a^l)/(x_jk-x_kl).
inline double kdv_cube_corner_kl(double aj, double ak, double al, double xk, double xl,
                                 double xjk, double xjl, double xkl) {
  return xl - (aj - ak) / (xjl - xkl) - xk + (aj - al) / (xjk - xkl);
}

// Mixed family pushed along direction 3 (cube on directions {0,1,2}); the
// six printed corner values, in the cube's own labels.
struct MixedCube012 {
  double a1, a2, a3;
  double x, x0, x1, x2, x01, x02, x12, x012;

  double e0() const {
    return -x1 + x2 - (a1 - a3) / (x01 - x0) + (a2 - a3) / (x02 - x0);
  }
  double e1() const {
    return -x0 + (a1 - a2) / (x1 - x2) + x01 - (a2 - a3) / (x12 - x1);
  }
  double e2() const {
    return x0 - (a1 - a2) / (x1 - x2) - x02 + (a1 - a3) / (x12 - x2);
  }
  double e01() const {
    return -x12 + x1 - (a1 - a2) / (x01 - x02) + (a1 - a3) / (x01 - x0);
  }
  double e02() const {
    return x12 - x2 + (a1 - a2) / (x01 - x02) - (a2 - a3) / (x02 - x0);
  }
  double e12() const {
    return x02 - (a1 - a3) / (x12 - x2) - x01 + (a2 - a3) / (x12 - x1);
  }
};

}  // namespace oracle
