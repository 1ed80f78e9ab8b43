from . import dirichlet, hecke
