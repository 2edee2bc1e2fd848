"""Adiabatic state transfer on extended SSH qubit chains.

Thin python layer over the C++ core: chain construction, edge-state
machinery, Schrodinger evolution, disorder ensembles, winding numbers,
waveguide spectroscopy and the flux-to-coupling hardware map.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
