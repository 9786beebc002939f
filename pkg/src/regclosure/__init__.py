"""regclosure: finite closure spaces and their regular-closed-set lattices.

The package builds closure spaces from implication rules, intersection
families, membership oracles, graphs, join-semilattices, rational point
configurations, and orthoposets; assembles the ortholattice of regular
closed sets; and verifies the structural results that hold for them
(semidistributivity relaxations, boundedness, completions, irreducible
descriptions) through an executable claim suite.
"""

__version__ = "0.1.0"

from .lattices import FiniteLattice, Poset  # noqa: F401
from .spaces import ClosureSpace, GroundSet  # noqa: F401
