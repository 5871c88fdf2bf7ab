"""liecoh: structure-constant Lie theory for low-cohomogeneity homogeneous geometry.

The package builds finite-dimensional real Lie algebras from explicit
structure constants, realizes Clifford modules and spin actions by integer
gamma matrices, measures orbit data of compact-group representations, and
assembles a catalog of reductive homogeneous spaces whose invariant-metric
curvature can be evaluated and checked.  A batch verifier (``liecoh`` on the
command line) runs the full claim suite deterministically and emits JSON-line
reports.
"""

__version__ = "0.1.0"
