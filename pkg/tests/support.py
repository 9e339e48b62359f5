"""Instance builders shared by the tests."""

from __future__ import annotations

from functools import lru_cache

from fixlab import catalog
from fixlab.construct import ActionHom
from fixlab.corpus import CorpusConfig, Instance, corpus_generate

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def inversion(n: int) -> Instance:
    """C_n x| C_2 with the generator of C_2 inverting C_n."""
    N, J = catalog.cyclic(n), catalog.cyclic(2)
    return Instance.build(f"C{n}", "C2", ActionHom(J, N, [[N.generators[0].inverse()]]))


def trivial(n_name: str, j_name: str) -> Instance:
    N, J = catalog.group(n_name), catalog.group(j_name)
    return Instance.build(n_name, j_name, ActionHom.trivial(J, N))


@lru_cache(maxsize=None)
def corpus(max_order: int, family: str) -> tuple[Instance, ...]:
    return tuple(corpus_generate(CorpusConfig(max_order=max_order, family=family)).instances)
