"""Spectra of the built-in curvature models.

Walks the model catalog, assembles both curvature operators for each
example, and prints eigenvalues with multiplicities.  Shows the three
behaviours worth remembering:

  * a space form has both spectra constant, equal to its sectional
    curvature, so it calibrates the sign convention;
  * a product of spheres has one negative eigenvalue on the trace-free
    symmetric side no matter how the radii are chosen;
  * complex projective space is Einstein yet also keeps a negative
    eigenvalue there.

Run:  python3 demos/01_model_spectra.py
"""

import numpy as np

from curvop import (
    catalog,
    constant_curvature,
    first_kind_matrix,
    fubini_study,
    product_spheres,
    ricci,
    scalar,
    second_kind_matrix,
    spectrum,
)


def describe(name, T):
    spec1 = spectrum(first_kind_matrix(T))
    spec2 = spectrum(second_kind_matrix(T))
    print(f"\n{name}  (n = {T.n}, scalar curvature = {scalar(T):.6g})")
    print(f"  two-form side, dim {len(spec1)}:")
    for value, count in spec1.multiplicities():
        print(f"    {value:+.6f}  x{count}")
    print(f"  trace-free symmetric side, dim {len(spec2)}:")
    for value, count in spec2.multiplicities():
        print(f"    {value:+.6f}  x{count}")


print("Built-in model families:")
for entry in catalog():
    print(f"  {entry.kind:<20} {entry.doc}")

describe("round sphere, curvature 1", constant_curvature(4, 1.0))

# The product S^2 x S^3 at unit radii.  Ricci eigenvalues differ between
# the factors (1 vs 2), so it is not Einstein, and the mixed directions
# contribute the negative eigenvalue -(1*1*3 + 1*2*2)/5 = -7/5.
T = product_spheres(2, 3, 1.0, 1.0)
describe("S^2(1) x S^3(1)", T)
print("  Ricci diagonal:", np.diag(ricci(T).components))

# Stretching the second factor to radius sqrt(2) balances the Ricci
# tensor, giving an Einstein product.  The negative eigenvalue survives.
describe("S^2(1) x S^3(sqrt 2), Einstein", product_spheres(2, 3, 1.0, np.sqrt(2)))

describe("complex projective plane", fubini_study(2))

print(
    "\nEvery product and CP^m keeps a negative trace-free eigenvalue;"
    "\nonly the space form is positive on that side."
)
