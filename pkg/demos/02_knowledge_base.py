"""Loading the unit knowledge base: lookups, conversions, frequencies.

The KB is a TSV of unit records (labels, symbols, aliases, keywords, a
frequency prior, the quantity kind, the dimension vector, and the
conversion value to the kind's standard unit).
"""

from dimkit import (
    compute_frequency,
    conversion_factor,
    kind_frequency,
    load_frequency_sidecar,
    load_kb,
    lookup_surface,
    units_of_dimension,
)
from dimkit.cli import packaged_data
from dimkit.dimension import DimensionVector
from dimkit.errors import IncomparableUnitsError

kb = load_kb(packaged_data("units.tsv"))
print(f"{len(kb)} units across {len(kb.kinds)} quantity kinds")

# Surface lookup is normalized (case, whitespace, Unicode composition)
# and covers English labels, Chinese labels, symbols, and aliases.
for form in ("kg", "千克", "KILOGRAMS", "metre"):
    print(f"lookup {form!r:14} ->", sorted(lookup_surface(kb, form)))

# Conversion factors are ratios of per-kind conversion values.
print("\n1 meter =", conversion_factor(kb, "M", "CentiM"), "centimeters")
print("1 mile  =", conversion_factor(kb, "MI", "KiloM"), "kilometers")

# Incomparable conversions raise, carrying both dimensions: the trap of
# treating a poundal (a force) like dyn/cm (a surface tension).
try:
    conversion_factor(kb, "POUNDAL", "DYN-PER-CentiM")
except IncomparableUnitsError as exc:
    print("rejected:", exc)

# Every unit of a dimension, straight off the dimension index.
lengths = sorted(units_of_dimension(kb, DimensionVector.of(L=1)))
print("\nlength units:", ", ".join(lengths))

# The frequency prior condenses three raw popularity signals
# (trend index, human score, corpus count) through a weighted log-score
# rescaled to [0.1, 1].
raw = load_frequency_sidecar(packaged_data("unit_frequencies.tsv"))
freqs = compute_frequency(raw)
top = sorted(freqs.items(), key=lambda kv: -kv[1])[:8]
print("\nmost frequent units:")
for unit_id, f in top:
    print(f"  {unit_id:10} {f:.3f}  ({kb.unit(unit_id).label_en})")

print("\nkind frequency (mean of top five members):")
for kind in ("Length", "Mass", "ForcePerLength"):
    print(f"  {kind:16} {kind_frequency(kb, kind):.3f}")
