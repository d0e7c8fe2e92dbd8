"""States and the affinity functional: construction, identities, channels.

Run:  python demos/01_affinity_basics.py
"""

import numpy as np

import resourcekit as rk

# Density matrices are validated on construction: Hermitian, positive
# semidefinite, unit trace.  Anything else is refused with a typed error.
plus = rk.pure_state([1, 1]).projector()
mixed = rk.validate(np.eye(2) / 2, [2])
print("purity of |+><+| :", plus.purity())
print("purity of I/2    :", mixed.purity())

# The affinity Tr(rho^a sigma^(1-a)) is 1 exactly on equal states and 0 on
# orthogonal ones; for a pure rho against the maximally mixed state at
# a = 1/2 it evaluates to 2^(-1/2).
print("\nA(plus, plus, 0.5)  =", rk.alpha_affinity(plus, plus, 0.5))
print("A(plus, mixed, 0.5) =", rk.alpha_affinity(plus, mixed, 0.5),
      " (exact: 2^-1/2 =", 2 ** -0.5, ")")

# Unitary invariance and multiplicativity, checked numerically.
rho = rk.random_mixed([3], 3, seed=1)
sig = rk.random_mixed([3], 2, seed=2)
u = rk.random_unitary(3, seed=3)
rot = lambda m: rk.validate(u @ m.data @ u.conj().T, [3])
print("\nunitary invariance drift :",
      abs(rk.alpha_affinity(rot(rho), rot(sig), 0.5)
          - rk.alpha_affinity(rho, sig, 0.5)))
prod = rk.alpha_affinity(rk.tensor(rho, plus), rk.tensor(sig, mixed), 0.5)
print("multiplicativity drift   :",
      abs(prod - rk.alpha_affinity(rho, sig, 0.5) * rk.alpha_affinity(plus, mixed, 0.5)))

# Affinity grows under channels (it is a similarity, not a distance).
chan = rk.random_channel(3, 2, seed=4)
print("\nA before channel :", rk.alpha_affinity(rho, sig, 0.5))
print("A after channel  :", rk.alpha_affinity(rk.apply(chan, rho),
                                               rk.apply(chan, sig), 0.5))

# The selective loss bound: average per-outcome loss never exceeds the
# total loss.  Certificates carry both sides and the signed slack.
cert = rk.selective_loss_bound(rho, sig, chan, 0.5)
print("\nselective loss certificate:")
print(f"  lhs = {cert.lhs:.6f}  rhs = {cert.rhs:.6f}  slack = {cert.slack:.2e}")
