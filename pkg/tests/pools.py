from curvekit.oracles import enumerate_curves
from curvekit.surface import base_chart, canonical_key

SMALL = sorted(enumerate_curves(base_chart(), 16), key=canonical_key)
TINY = [c for c in SMALL if c.total_weight <= 12]
