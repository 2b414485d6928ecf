# demo.py
# Quick tour of the ein toolkit

from fractions import Fraction

import numpy as np

from ein import cartan_holonomy as ch
from ein import centralizer_structure as cs
from ein import einstein_model as em
from ein.codec import render_matrix
from ein.errors import EinError
from ein.lie_algebra import basis_U
from ein.nilpotency import maximal_unipotent, verify_degree_bound
from ein.quadratic_forms import Signature


def quick_demo():
    """Walk through the main constructions in signature (1,2)"""
    print("ein - Exact Conformal Model Toolkit Demo")
    print("=" * 40)
    print("Features demonstrated:")
    print("• The flow tau^s and its attractor on Lambda")
    print("• Holonomy factorization tau^s e^{tU_n} = e^{c(t)U_n} h(s,t)")
    print("• Nilpotence degree bound 2p+1 and its witness")
    print("• Centralizer of T and its Heisenberg ideal")
    print("• Development of a null triangle")
    print()

    sig = Signature(1, 2)
    rng = np.random.default_rng(42)

    try:
        y = em.random_point_off_fixed_set(sig, rng)
        print(f"Point y = {y}")
        print(f"tau^1 y = {em.tau_flow(1, y)}")
        print(f"✓ limit {em.tau_limit(y)} equals attractor vertex {em.attractor_vertex(y)}")

        s, t = Fraction(1), Fraction(1)
        print("\nh(1,1) =")
        print(render_matrix(ch.holonomy_matrix(s, t, sig).entries()))
        print(f"✓ base factorization holds: {ch.verify_base_factorization(s, t, sig)}")

        report = verify_degree_bound(maximal_unipotent(sig))
        print(f"\n✓ maximal unipotent has degree {report.degree} (bound {report.bound})")

        basis = cs.ctau_basis(sig.p, sig.q)
        heis = cs.heis_structure_report(sig.p, sig.q)
        print(f"✓ dim c(T) = {basis.kernel.dimension}, Heisenberg ideal of dimension {heis.ideal_dimension}")

        X = basis_U(sig, 2)
        curve = ch.triangle_curve(0, X, 1, 1)
        matches = ch.develop(curve) == ch.triangle_target(0, X, 1, 1)
        print(f"✓ triangle develops to e^(Y): {matches}")
    except EinError as e:
        print(f"Demo error: {e}")


if __name__ == "__main__":
    quick_demo()
