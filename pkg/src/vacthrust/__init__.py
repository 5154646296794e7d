"""Numerical toolkit for the quantum-vacuum thrust no-go analysis.

Submodules
----------
fields      classical E/B algebra, Lorentz boosts, relativistic pusher
schwinger   pair-production rate series
propulsion  pair-production vs photon thruster trade arithmetic
pcf         parabolic cylinder functions D_nu(z) of complex order
modes       charged scalar field mode functions in parallel E and B
vev         bilinear operator algebra and vacuum expectation values
cli         scenario runner and report writer
"""

__version__ = "0.1.0"
