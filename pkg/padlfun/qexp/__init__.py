from . import coleman, eisenstein, nabla, qexpansion
