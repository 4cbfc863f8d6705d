"""
Stokes diagrams
===============

Trace every Stokes and anti-Stokes line of the five model problems and write
one SVG per problem next to this script.
"""

from pathlib import Path

from phaseint.geometry import diagram, diagram_svg

out = Path(__file__).with_name("diagrams")
out.mkdir(exist_ok=True)

##############################################################################
# Each simple zero emits three lines of each kind; the pole of the Budden
# problem emits a single anti-Stokes line.

for family, param in [("weber", 1.0), ("budden", 2.0), ("quartic", 1.0), ("sextic", 1.0), ("pt_cubic", 1.0)]:
    d = diagram(family, param)
    path = out / f"{family}.svg"
    path.write_text(diagram_svg(d))
    print(f"{family:9s} anti-Stokes {d.count('anti_stokes'):2d}  Stokes {d.count('stokes'):2d}  -> {path.name}")
