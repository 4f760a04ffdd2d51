"""Spectral lower bounds and Einstein certificates.

Five inequalities tie the trace-free operator spectrum to scalar
curvature, Ricci eigenvalues, and curvature quadratic forms.  Space
forms sit exactly on every bound; random tensors satisfy them with
slack.  The certificate machinery turns threshold verdicts into
plain-language conclusions.

Run:  python3 demos/03_certificates.py
"""

import numpy as np

from curvop import (
    all_checks,
    constant_curvature,
    einstein_certificate,
    kulkarni_nomizu,
    product_spheres,
    random_curvature,
    threshold_profile,
)


def show_checks(name, T):
    print(f"\n{name}")
    for r in all_checks(T):
        print(
            f"  {r.name:<22} lhs={r.lhs:+.6f} rhs={r.rhs:+.6f} "
            f"margin={r.margin:+.2e}  {r.verdict}"
        )


# Thresholds grow roughly linearly with dimension; the two columns are
# the Einstein threshold and the stronger constant-curvature threshold.
print("dimension thresholds")
for n in (3, 4, 5, 7, 8, 10, 14, 20):
    p = threshold_profile(n)
    print(
        f"  n={n:>2}  einstein={p.einstein_threshold:.4f}  "
        f"constant={p.constant_curvature_threshold:.4f}  branch {p.branch}"
    )

show_checks("round sphere S^4, every bound saturated", constant_curvature(4, 1.0))
show_checks("random algebraic curvature tensor (seed 3, n=5)", random_curvature(3, 5))

# The certificate on a product: the negative mixed eigenvalue breaks the
# Einstein threshold, so no conclusion is claimed.
cert = einstein_certificate(product_spheres(2, 3, 1.0, 1.0))
print("\nS^2(1) x S^3(1) certificate")
print("  einstein threshold sum:", f"{cert.einstein_verdict.value:+.4f}")
print("  is_einstein:", cert.is_einstein, " impossible:", cert.impossible)
for line in cert.conclusions:
    print("  -", line)

# A sphere slightly perturbed in one Ricci direction keeps a positive
# spectrum but is visibly not Einstein.  The certificate flags the
# combination as impossible: nothing with harmonic curvature can look
# like this at every point.
h = np.diag([1.0, 0.0, 0.0, 0.0])
T = constant_curvature(4, 1.0) + 0.01 * kulkarni_nomizu(h, np.eye(4))
cert = einstein_certificate(T)
print("\nperturbed sphere certificate")
print("  trace-free Ricci norm:", f"{cert.traceless_ricci_norm:.4f}")
print("  is_einstein:", cert.is_einstein, " impossible:", cert.impossible)
for line in cert.conclusions:
    print("  -", line)
