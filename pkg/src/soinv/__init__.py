"""Exact classification of inner involutions of SO(n, k, beta).

The library decides, over Q, R, Q_p, F_p and algebraically closed
fields of characteristic 0, which of the four types an inner involution
of a special orthogonal group belongs to, computes the canonical
eigenspace decomposition witnessing that type, and answers isomorphy
questions through congruence invariants of the associated diagonal
blocks.  A brute-force module cross-checks everything against small
finite orthogonal groups.
"""

__version__ = "0.1.0"
