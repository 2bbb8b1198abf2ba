"""Quantum graphs, quantum-to-classical homomorphism games and quantum colorings.

Matrices are complex numpy arrays. Reports come back as dicts with the same
layout as the ``qgraph`` command-line tool's JSON output.
"""

from ._qgraph import *  # noqa: F401,F403
from ._qgraph import DomainError, Error, ShapeError  # noqa: F401
