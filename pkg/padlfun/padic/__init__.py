from . import cyclo, local, numbers, polys, weights
