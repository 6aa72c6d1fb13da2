"""Classical and free chi_E laws side by side.

For each family the order-4 and order-6 moments of a sum of K
non-overlapping coordinates are tabulated along K = L = M = N/2.  (For the
unitary pair the alternating words first tell the laws apart at order 6.)  The classical family
converges to the partition sum over all partitions, the free one to the sum
over noncrossing partitions only.
"""

from fractions import Fraction

from haarspace import QuantumFamily, RegimeSpec, convergence_table

half = Fraction(1, 2)
regime = RegimeSpec(half, half, half, (8, 16, 32, 64))

pairs = [("O", "Oplus"), ("Hs", "HsPlus"), ("U", "Uplus")]
for classical, free in pairs:
    for name in (classical, free):
        f = QuantumFamily(name, 2) if name.startswith("Hs") else QuantumFamily(name)
        rows = convergence_table(f, regime, [4, 6])
        limits = {r.word: str(r.limit) for r in rows}
        print(f"{str(f):<10} limits {limits}")
        for r in sorted(rows, key=lambda r: (r.order, r.N)):
            print(f"    N={r.N:<3} {r.word}  moment {float(r.moment):.6f}  gap {float(r.gap):.2e}")
    print()
