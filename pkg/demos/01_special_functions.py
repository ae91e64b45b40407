"""Tour of the special-function layer: complete elliptic integrals,
Jacobi elliptic functions, and the closed-form power integrals checked
against adaptive quadrature."""

import math

import numpy as np

from matterwave import specfun as sf

print("complete elliptic integrals (parameter convention, m = k^2)")
print(f"{'m':>6} {'K(m)':>16} {'E(m)':>16}")
for m in (0.0, 0.1, 0.5, 0.9, 0.99):
    print(f"{m:6.2f} {sf.ellip_K(m):16.12f} {sf.ellip_E(m):16.12f}")

# the Legendre relation ties K and E at complementary parameters
m = 0.37
legendre = (sf.ellip_E(m) * sf.ellip_K(1 - m) + sf.ellip_E(1 - m) * sf.ellip_K(m)
            - sf.ellip_K(m) * sf.ellip_K(1 - m))
print(f"\nLegendre combination at m={m}: {legendre:.15f}  (pi/2 = {math.pi/2:.15f})")

# Jacobi functions interpolate between circular (m=0) and hyperbolic (m=1)
print("\nsn(1.0 | m) from sine to tanh:")
for m in (0.0, 0.25, 0.5, 0.75, 1.0):
    sn, cn, dn = sf.jacobi_sn_cn_dn(1.0, m)
    print(f"  m={m:4.2f}: sn={sn:.10f} cn={cn:.10f} dn={dn:.10f} "
          f"sn^2+cn^2-1={sn*sn+cn*cn-1:+.1e}")

# quarter-period power integrals: closed form vs adaptive Simpson
print("\nclosed-form power integrals vs quadrature:")
m = 0.6
K = sf.ellip_K(m)
for kind, (comp, p) in {"sn2": (0, 2), "sn4": (0, 4),
                        "cn2": (1, 2), "cn4": (1, 4)}.items():
    closed = sf.power_integral(kind, m)
    numeric = sf.quad(lambda z: sf.jacobi_sn_cn_dn(z, m)[comp] ** p, 0.0, K, 1e-12)
    print(f"  {kind}: closed={closed:.12f} quad={numeric:.12f} "
          f"diff={closed-numeric:+.1e}")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    from pathlib import Path
    z = np.linspace(0.0, 4.0 * sf.ellip_K(0.8), 600)
    sn, cn, dn = sf.jacobi_sn_cn_dn(z, 0.8)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(z, sn, label="sn")
    ax.plot(z, cn, label="cn")
    ax.plot(z, dn, label="dn")
    ax.set_xlabel("z")
    ax.set_title("Jacobi elliptic functions, m = 0.8 (one full period)")
    ax.legend()
    out = Path(__file__).parent / "output"
    out.mkdir(exist_ok=True)
    fig.savefig(out / "01_jacobi_functions.png", dpi=120)
    print(f"\nplot written to {out / '01_jacobi_functions.png'}")
