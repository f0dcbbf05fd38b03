"""Dimension vectors and their algebra.

A dimension is the product-of-powers signature of a physical quantity.
This walk-through parses the compact encoded form, composes dimensions
with * and /, and shows the "unit trap" from mixing incomparable units.
"""

from dimkit import (
    DimensionVector,
    format_dimension,
    format_symbolic,
    is_comparable,
    parse_dimension,
)

# The encoded form packs the seven base exponents plus a derived
# dimensionless digit: force/length, i.e. surface tension.
surface_tension = parse_dimension("A0E0L0I0M1H0T-2D0")
print("parsed:", surface_tension.exponents)
print("symbolic:", format_symbolic(surface_tension))  # MT^-2

# Build vectors directly and compose them.
length = DimensionVector.of(L=1)
mass = DimensionVector.of(M=1)
time = DimensionVector.of(T=1)

force = mass * length / time**2
print("force:", format_symbolic(force), "=", format_dimension(force))

energy = force * length
speed = length / time
print("energy:", format_symbolic(energy))
print("speed:", format_symbolic(speed))

# The Dimension Law: only identical dimensions are comparable.
# A poundal (a force) cannot be converted into dyn/cm (a surface
# tension), even though both look like obscure CGS-era units.
poundal = force
dyn_per_cm = mass / time**2
print("\npoundal comparable with dyn/cm?", is_comparable(poundal, dyn_per_cm))
print("poundal:", format_symbolic(poundal), " dyn/cm:", format_symbolic(dyn_per_cm))

# Round trip: the encoded string is the canonical serialization.
for dv in (force, energy, speed, DimensionVector.of()):
    encoded = format_dimension(dv)
    assert parse_dimension(encoded) == dv
    print(f"{format_symbolic(dv):>8}  <->  {encoded}")
