from . import assembly, oracles
