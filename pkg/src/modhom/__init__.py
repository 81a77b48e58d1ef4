"""Counting graph homomorphisms modulo a prime."""
from .errors import *  # noqa: F401,F403
from .graph import (DistinguishedGraph, Graph, LabelledGraph, blocks,  # noqa: F401
                    connected_components, disjoint_union, distance, identify,
                    induced_subgraph, tensor_product, two_ball)
from .homs import (HomCount, count_aut, count_bip_homs, count_homs,  # noqa: F401
                   count_inj, count_surj, count_walks)
from .kernels import NATIVE_AVAILABLE  # noqa: F401

__version__ = "0.1.0"
