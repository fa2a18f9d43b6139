"""planefix: exact tools for untangling planar graph drawings.

The package has three legs:

* drawing verification over exact rationals (`geometry`),
* the outerplanar pipeline: recognition, almost-layered drawings, folds
  with large free collinear sets, and untangling of collinear drawings
  (`outerplanar`, `untangle`),
* recursive triangulation families with provably small collinear sets and
  the line-cut analysis that certifies the bounds (`family`, `analyze`).
"""

__version__ = "0.1.0"

GENERATOR_NOTE = (
    "All randomness flows from a single 64-bit seed through Python's "
    "random.Random (Mersenne Twister); see planefix.randgraphs."
)
