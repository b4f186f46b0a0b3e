"""Generate src/ex1_sources.cpp: right-hand sides of the rotating-circle
benchmark obtained by substituting its exact solution into the bulk and
surface equations.

Usage: python3 tools/gen_ex1_sources.py > src/ex1_sources.cpp
"""
import sympy as sp

t, x, y = sp.symbols("t x y", real=True)
pi = sp.pi
k_B = sp.Rational(1, 100)
k_S = 1

xc = sp.Rational(1, 2) + sp.Rational(28, 100) * sp.sin(pi * t)
yc = sp.Rational(1, 2) - sp.Rational(28, 100) * sp.cos(pi * t)
R = sp.sqrt((x - xc) ** 2 + (y - yc) ** 2)
n1 = (x - xc) / R
n2 = (y - yc) / R

c2 = sp.cos(2 * pi * t)
u_B = sp.Rational(1, 2) + sp.Rational(4, 10) * sp.cos(pi * x) * sp.cos(pi * y) * c2
u_S = (u_B + pi / 250 * sp.sin(pi * x) * sp.cos(pi * y) * c2 * n1
       + pi / 250 * sp.cos(pi * x) * sp.sin(pi * y) * c2 * n2) / (
    sp.Rational(3, 2) + sp.Rational(4, 10) * sp.cos(pi * x) * sp.cos(pi * y) * c2)

bx = pi * (sp.Rational(1, 2) - y)
by = pi * (x - sp.Rational(1, 2))


def material(u):
    return sp.diff(u, t) + bx * sp.diff(u, x) + by * sp.diff(u, y)


f_B = material(u_B) - k_B * (sp.diff(u_B, x, 2) + sp.diff(u_B, y, 2))

# Laplace-Beltrami on the circle through the radial extension:
# lap_G u = lap u - n.H.n - kappa dn u with kappa = 1/R.
lap = sp.diff(u_S, x, 2) + sp.diff(u_S, y, 2)
nHn = (n1 * n1 * sp.diff(u_S, x, 2) + 2 * n1 * n2 * sp.diff(u_S, x, y)
       + n2 * n2 * sp.diff(u_S, y, 2))
dn = n1 * sp.diff(u_S, x) + n2 * sp.diff(u_S, y)
lap_G = lap - nHn - dn / R
coupling = u_B - u_S - u_B * u_S
f_S = material(u_S) - k_S * lap_G - coupling


def emit(name, expr):
    subs, (red,) = sp.cse(expr, symbols=sp.numbered_symbols("c"))
    lines = [f"double {name}(double t, double x, double y) {{"]
    for s, e in subs:
        lines.append(f"  const double {s} = {sp.cxxcode(e, standard='c++17')};")
    lines.append(f"  return {sp.cxxcode(red, standard='c++17')};")
    lines.append("}")
    return "\n".join(lines)


print("// Generated by tools/gen_ex1_sources.py; do not edit.")
print("#include <cmath>")
print()
print('#include "stcut/benchmarks.hpp"')
print()
print("namespace stcut::ex1 {")
print()
print(emit("source_bulk_xy", f_B))
print()
print(emit("source_surface_xy", f_S))
print()
print("}  // namespace stcut::ex1")
