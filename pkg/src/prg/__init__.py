"""Exact constructions around preregular forms and the cogroupoids H(e, f).

Subpackages and modules:

exactlinalg
    Fractions, dense matrices, sparse tensors, RREF and contraction.
forms
    Preregularity, cyclic twists, dual forms, Aut(e), twisted forms.
superpotential
    Relations and Hilbert data of A(f, N).
ncalg
    Free algebras, presentations, bounded ideal membership, Zhang twists.
cogroupoid
    H(e, f), its structure maps, axiom checks, twisting pairs.
representations
    Graded module families over H_2(e, f) and nonvanishing certificates.
cli
    The ``prg`` command.
"""
from .kernel import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"
__all__ = ["KERNEL_BACKEND", "__version__"]
