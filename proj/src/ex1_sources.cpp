// Generated by tools/gen_ex1_sources.py; do not edit.
#include <cmath>

#include "stcut/benchmarks.hpp"

namespace stcut::ex1 {

double source_bulk_xy(double t, double x, double y) {
  const double c0 = 2*M_PI*t;
  const double c1 = M_PI*x;
  const double c2 = std::cos(c1);
  const double c3 = M_PI*y;
  const double c4 = std::cos(c3);
  const double c5 = std::pow(M_PI, 2);
  const double c6 = std::cos(c0);
  const double c7 = (2.0/5.0)*c5*c6;
  return (1.0/125.0)*c2*c4*c5*c6 - 4.0/5.0*M_PI*c2*c4*std::sin(c0) - c2*c7*(x - 1.0/2.0)*std::sin(c3) - c4*c7*(1.0/2.0 - y)*std::sin(c1);
}

double source_surface_xy(double t, double x, double y) {
  const double c0 = M_PI*y;
  const double c1 = std::cos(c0);
  const double c2 = M_PI*x;
  const double c3 = std::cos(c2);
  const double c4 = M_PI*t;
  const double c5 = 2*c4;
  const double c6 = std::cos(c5);
  const double c7 = c3*c6;
  const double c8 = c1*c7;
  const double c9 = (2.0/5.0)*c8;
  const double c10 = c9 + 3.0/2.0;
  const double c11 = 1.0/c10;
  const double c12 = std::sin(c4);
  const double c13 = (7.0/25.0)*c12;
  const double c14 = c13 - x + 1.0/2.0;
  const double c15 = -c14;
  const double c16 = std::pow(c15, 2);
  const double c17 = std::cos(c4);
  const double c18 = (7.0/25.0)*c17;
  const double c19 = y - 1.0/2.0;
  const double c20 = c18 + c19;
  const double c21 = std::pow(c20, 2);
  const double c22 = c16 + c21;
  const double c23 = std::pow(c22, -1.0/2.0);
  const double c24 = c15*c23;
  const double c25 = std::sin(c2);
  const double c26 = c1*c25;
  const double c27 = M_PI*c6;
  const double c28 = (1.0/250.0)*c27;
  const double c29 = c26*c28;
  const double c30 = c20*c23;
  const double c31 = std::sin(c0);
  const double c32 = c3*c31;
  const double c33 = c30*c32;
  const double c34 = c9 + 1.0/2.0;
  const double c35 = c24*c29 + c28*c33 + c34;
  const double c36 = c11*c35;
  const double c37 = std::sin(c5);
  const double c38 = M_PI*c3;
  const double c39 = c1*c38;
  const double c40 = (4.0/5.0)*c37*c39;
  const double c41 = c35/std::pow(c10, 2);
  const double c42 = std::pow(M_PI, 2);
  const double c43 = c23*c32;
  const double c44 = (7.0/6250.0)*c6;
  const double c45 = c26*c42;
  const double c46 = (1.0/125.0)*c37;
  const double c47 = std::pow(c22, -3.0/2.0);
  const double c48 = M_PI*c15;
  const double c49 = M_PI*c20;
  const double c50 = c13*c49 + c18*c48;
  const double c51 = (2.0/5.0)*c27;
  const double c52 = c32*c51;
  const double c53 = (1.0/250.0)*c42;
  const double c54 = c24*c53;
  const double c55 = c25*c31;
  const double c56 = c55*c6;
  const double c57 = c30*c53;
  const double c58 = c48*c6;
  const double c59 = c26*c58;
  const double c60 = (1.0/250.0)*c47;
  const double c61 = -c20*c60;
  const double c62 = c32*c49*c6;
  const double c63 = c11*(c28*c43 - c52 - c54*c56 + c57*c8 + c59*c61 + c61*c62) + c41*c52;
  const double c64 = c26*c51;
  const double c65 = c14*c60;
  const double c66 = c11*(c23*c29 + c54*c8 - c56*c57 + c59*c65 + c62*c65 - c64) + c41*c64;
  const double c67 = 14*c12 - 50*x + 25;
  const double c68 = std::pow(c67, 2);
  const double c69 = 14*c17 + 50*y - 25;
  const double c70 = std::pow(c69, 2);
  const double c71 = c68 + c70;
  const double c72 = std::pow(c71, -3.0/2.0);
  const double c73 = c32*c69;
  const double c74 = 2500*c72;
  const double c75 = std::pow(c71, -5.0/2.0);
  const double c76 = 7500*c26*c75;
  const double c77 = 4*c8 + 15;
  const double c78 = 1.0/c77;
  const double c79 = 8*c78;
  const double c80 = 100*c1;
  const double c81 = std::pow(c71, -1.0/2.0);
  const double c82 = c27*c81;
  const double c83 = -c26*c67*c82 + c7*c80 + c73*c82 + 125;
  const double c84 = c38*c80;
  const double c85 = c72*c84;
  const double c86 = 50*c81;
  const double c87 = c67*c81;
  const double c88 = M_PI*c55;
  const double c89 = c69*c81;
  const double c90 = 50*c72;
  const double c91 = c68*c90;
  const double c92 = c67*c72;
  const double c93 = 50*c92;
  const double c94 = c25*c80 - c26*c86 + c26*c91 + c39*c87 - c73*c93 + c88*c89;
  const double c95 = c42*c81;
  const double c96 = 100*c88;
  const double c97 = c69*c92;
  const double c98 = -c1*c25*c42*c67*c81 - 100*M_PI*c1*c3*c81 + c73*c95 + c84 + c96*c97;
  const double c99 = c27*c78;
  const double c100 = (1.0/25.0)*c99;
  const double c101 = c100*(7500*c1*c25*c67*c72 + 4*M_PI*c1*c78*c83*(c1*std::pow(c25, 2)*c6*c79 + c3) - c26*c27*c79*c94 + 7500*c3*c31*c68*c69*c75 - std::pow(c67, 3)*c76 - c68*c85 - c73*c74 - c98);
  const double c102 = c67*c70;
  const double c103 = c70*c90;
  const double c104 = c26*c69;
  const double c105 = -c103*c32 + c104*c93 + c32*c86 - 100*c32 + c39*c89 + c87*c88;
  const double c106 = c100*(2500*c1*c25*c67*c72 - c102*c76 + 8*M_PI*c105*c3*c31*c6*c78 + 7500*c3*c31*std::pow(c69, 3)*c75 + 4*M_PI*c3*c78*c83*(c1 + std::pow(c31, 2)*c7*c79) - c70*c85 - 7500*c72*c73 - c98);
  const double c107 = 1.0/c22;
  const double c108 = c32*c67;
  const double c109 = 4*c99;
  return c101*c107*c16 - c101 + c106*c107*c21 - c106 + (2.0/25.0)*c107*c20*c58*c78*(-7500*c102*c32*c75 + c103*c88 - c104*c74 - c104*c95 + c105*c109*c26 + c108*c74 + c108*c95 - c109*c32*c94 + 32*c26*c27*c32*c83/std::pow(c77, 2) + c68*c69*c76 - 4*c78*c83*c88 - c81*c96 + c84*c97 + c88*c91 + c96) + c11*((1.0/250.0)*M_PI*c1*c15*c25*c47*c50*c6 - c12*c42*c43*c44 - c17*c23*c44*c45 + (1.0/250.0)*M_PI*c20*c3*c31*c47*c50*c6 - c24*c45*c46 - c33*c42*c46 - c40) - M_PI*c19*c66 + c23*(c24*c66 + c30*c63) + c34*c36 + c36 + c40*c41 + M_PI*c63*(x - 1.0/2.0) - c9 - 1.0/2.0;
}

}  // namespace stcut::ex1
