"""Exact certification of interval Hopf bifurcation hypotheses.

Submodules: ``algebra`` (exact polynomials and root isolation), ``family``
(alpha-parameterized interval polynomials), ``stability`` (root counting,
Kharitonov, q-instability), ``descartes``, ``regions`` (fR / fS
branch-and-bound), ``degree`` (float validators), ``pipeline`` and ``cli``.
"""

from .family import CoeffInterval, IntervalFamily, IntervalPoly
from .pipeline import Certificate, ProblemSpec, verify
from .stability import RootCount, Verdict, root_count

__version__ = "0.1.0"

__all__ = ["Certificate", "CoeffInterval", "IntervalFamily", "IntervalPoly", "ProblemSpec", "RootCount", "Verdict", "root_count", "verify"]
