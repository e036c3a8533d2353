"""Conway structure of prime alternating link projections.

Decomposes alternating diagrams into twisted band diagrams and jewels
along canonical families of Conway circles, computes structure trees and
rational tangle fractions, applies flype moves, and detects or obstructs
visible q-periodicity.
"""

from .errors import (KnotError, MalformedCode, NonQuadrivalent, NonPlanar,
                     NonRealizable, NotComparable, NotAdmissible,
                     NotRational, DivisionCollapse, IllegalMove,
                     BudgetExceeded, NotAKnot, NotAlternating, NotATree)
from .diagram import (LinkDiagram, parse_pd, parse_gauss, rot, rot_inv,
                      through)
from .build import (MapBuilder, Tangle, crossing_tangle, hsum, vstack,
                    rotate, htwist, vtwist, numerator, denominator,
                    torus2, pretzel, necklace, from_pairing)
from .rational import (Frac, INF, eval_cf, is_homogeneous,
                       expand_homogeneous, fractions_equal,
                       cardan_to_diagram, tangle_fraction, fraction_of,
                       RationalTangle)
from .circles import (HasemanCircle, CircleFamily, Region, Decomposition,
                      enumerate_haseman, is_compressible, compatible,
                      are_parallel, canonical_family, decompose,
                      essential_family, is_rational_projection,
                      maximal_rational_tangles, read_chain,
                      circle_for_edges)
from .trees import (StructureTree, TreeAutomorphism, canonical_tree,
                    essential_tree, tree_isomorphic, all_automorphisms,
                    automorphisms_of_order, fixed_subtree)
from .flypes import (FlypeMove, FlypeOrbit, ClosureResult,
                     available_flypes, apply_flype, normalize_twists,
                     flype_orbits, flype_closure, flype_equivalent)
from .periodicity import (ProjectionSymmetry, PeriodicityReport, AtomTree,
                          SeifertReport, projection_symmetries,
                          is_q_periodic_projection, obstruction_report,
                          atom_lemma, find_periodic_projection,
                          periodicity_report, seifert_circles,
                          seifert_report)

__version__ = "0.1.0"
