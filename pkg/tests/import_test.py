from unittest import TestCase


class ImportTest(TestCase):
    def test_imports(self):
        from padlfun import (
            checks, config, errors, fetch, ledger, loaders, main, regexes,
            utils, version,
        )
        from padlfun.characters import (
            dirichlet, hecke,
        )
        from padlfun.export import (
            export, sql,
        )
        from padlfun.lfun import (
            assembly, oracles,
        )
        from padlfun.padic import (
            cyclo, local, numbers, polys, weights,
        )
        from padlfun.qexp import (
            coleman, eisenstein, nabla, qexpansion,
        )
        from padlfun.quadratic import (
            forms, groups, hgroup, ideals,
        )
