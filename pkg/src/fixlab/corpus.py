"""Semidirect-product instances, their JSON form, and the corpus generator."""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd
from pathlib import Path

from . import catalog
from .construct import ActionHom, SemidirectProduct, automorphisms, enumerate_actions, semidirect
from .errors import OrderCapExceeded, ParseError
from .perm import Permutation, PermutationGroup
from .structure import (is_nilpotent, table_is_soluble, table_is_supersoluble,
                        table_order_statistics)

LABEL_KEYS = ("n_abelian", "n_nilpotent", "g_soluble", "g_supersoluble", "coprime")
_TOP_KEYS = ("id", "N", "J", "action", "labels", "gaction")
_GROUP_KEYS = ("name", "degree", "generators")


def _dumps(data) -> str:
    return json.dumps(data, indent=2) + "\n"


@dataclass(eq=False)
class Instance:
    """``G = N x| J`` for an explicit action, with structural labels."""

    N: PermutationGroup
    J: PermutationGroup
    action: ActionHom
    n_name: str = ""
    j_name: str = ""
    gaction: dict | None = None

    @classmethod
    def build(cls, n_name: str, j_name: str, action: ActionHom) -> Instance:
        return cls(action.target, action.actor, action, n_name, j_name)

    @cached_property
    def semidirect(self) -> SemidirectProduct:
        return semidirect(self.N, self.J, self.action)

    @property
    def G(self) -> PermutationGroup:
        return self.semidirect.whole

    @property
    def N_sub(self) -> PermutationGroup:
        return self.semidirect.N_sub

    @property
    def J_sub(self) -> PermutationGroup:
        return self.semidirect.J_sub

    @property
    def order(self) -> int:
        return self.N.order * self.J.order

    @cached_property
    def labels(self) -> dict[str, bool]:
        T = self.semidirect.pair_table
        return {
            "n_abelian": self.N.is_abelian,
            "n_nilpotent": is_nilpotent(self.N),
            "g_soluble": table_is_soluble(T),
            "g_supersoluble": table_is_supersoluble(T),
            "coprime": gcd(self.N.order, self.J.order) == 1,
        }

    def _content(self) -> dict:
        return {
            "N": {"name": self.n_name, **self.N.to_dict()},
            "J": {"name": self.j_name, **self.J.to_dict()},
            "action": self.action.to_list(),
            "labels": self.labels,
        }

    @cached_property
    def id(self) -> str:
        blob = json.dumps(self._content(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def to_dict(self) -> dict:
        out = {"id": self.id, **self._content()}
        if self.gaction is not None:
            out["gaction"] = self.gaction
        return out

    def dumps(self) -> str:
        return _dumps(self.to_dict())

    def fingerprint(self) -> tuple:
        """Cheap isomorphism invariant used to drop repeated instances."""
        fixed = sum(1 for n in self.N.elements
                    if all(self.action.right(j, n) == n for j in self.J.generators))
        return (self.n_name, self.j_name, table_order_statistics(self.semidirect.pair_table),
                tuple(sorted(self.labels.items())), self.action.kernel_order(), fixed)

    def describe(self) -> str:
        return f"{self.n_name or 'N'} x| {self.j_name or 'J'} [{self.id}]"


# ---------------------------------------------------------------------------
# parsing


def _require(data: dict, key: str, where: str):
    if key not in data:
        raise ParseError(f"{where}: missing field '{key}'")
    return data[key]


def _parse_group(data, where: str) -> tuple[str, PermutationGroup]:
    if not isinstance(data, dict):
        raise ParseError(f"{where}: expected an object")
    extra = sorted(set(data) - set(_GROUP_KEYS))
    if extra:
        raise ParseError(f"{where}: unknown field '{extra[0]}'")
    name = data.get("name", "")
    degree = _require(data, "degree", where)
    gens = _require(data, "generators", where)
    if not isinstance(degree, int) or degree < 1:
        raise ParseError(f"{where}.degree: expected a positive integer")
    if not isinstance(gens, list):
        raise ParseError(f"{where}.generators: expected a list")
    try:
        perms = [Permutation.from_cycles(s, degree) for s in gens]
    except (ValueError, TypeError) as exc:
        raise ParseError(f"{where}.generators: {exc}") from None
    return name, PermutationGroup(degree, perms)


def instance_from_dict(data) -> Instance:
    if not isinstance(data, dict):
        raise ParseError("instance: expected an object")
    extra = sorted(set(data) - set(_TOP_KEYS))
    if extra:
        raise ParseError(f"instance: unknown field '{extra[0]}'")
    n_name, N = _parse_group(_require(data, "N", "instance"), "N")
    j_name, J = _parse_group(_require(data, "J", "instance"), "J")
    rows = _require(data, "action", "instance")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("action: expected a list of lists of cycle strings")
    try:
        images = [[Permutation.from_cycles(s, N.degree) for s in row] for row in rows]
        action = ActionHom(J, N, images)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"action: {exc}") from None
    inst = Instance(N, J, action, n_name, j_name)
    if "labels" in data:
        labels = data["labels"]
        if not isinstance(labels, dict):
            raise ParseError("labels: expected an object")
        for key in labels:
            if key not in LABEL_KEYS:
                raise ParseError(f"labels: unknown label '{key}'")
        for key, value in labels.items():
            if value != inst.labels[key]:
                raise ParseError(f"labels.{key}: recorded {value} but recomputed {inst.labels[key]}")
    if "id" in data and data["id"] != inst.id:
        raise ParseError(f"id: recorded {data['id']} but content hashes to {inst.id}")
    if "gaction" in data:
        from .actions import GAction

        ga = data["gaction"]
        if not isinstance(ga, dict) or set(ga) != {"points", "generator_rows"}:
            raise ParseError("gaction: expected fields 'points' and 'generator_rows'")
        try:
            GAction.from_dict(inst.G, ga)
        except (ValueError, TypeError) as exc:
            raise ParseError(f"gaction: {exc}") from None
        inst.gaction = ga
    return inst


def load_instance(path: str | Path) -> Instance:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return instance_from_dict(data)


def save_instance(inst: Instance, path: str | Path) -> None:
    Path(path).write_text(inst.dumps())


# ---------------------------------------------------------------------------
# generation


@dataclass(frozen=True)
class CorpusConfig:
    max_order: int = 48
    family: str = "abelian"              # "abelian" or "nilpotent" N
    supersoluble: bool | None = None     # keep only (non-)supersoluble G
    coprime: bool | None = None          # keep only (non-)coprime |N|, |J|
    soluble: bool | None = None
    min_order: int = 1
    seed: int = 0
    max_action_candidates: int = 20000
    dedup: bool = True

    def __post_init__(self):
        if self.family not in ("abelian", "nilpotent"):
            raise ValueError(f"unknown family {self.family!r}")


@dataclass
class Corpus:
    config: CorpusConfig
    instances: list[Instance]
    skipped: list[dict] = field(default_factory=list)

    def __iter__(self):
        return iter(self.instances)

    def __len__(self) -> int:
        return len(self.instances)


@lru_cache(maxsize=None)
def _aut(name: str) -> PermutationGroup | None:
    try:
        return automorphisms(catalog.group(name))
    except OrderCapExceeded:
        return None


def _keep(inst: Instance, cfg: CorpusConfig) -> bool:
    lab = inst.labels
    for key, want in (("g_supersoluble", cfg.supersoluble), ("coprime", cfg.coprime),
                      ("g_soluble", cfg.soluble)):
        if want is not None and lab[key] != want:
            return False
    return True


@lru_cache(maxsize=64)
def corpus_generate(config: CorpusConfig) -> Corpus:
    """Every N x| J from the catalog with ``min_order <= |N||J| <= max_order``.

    N runs over nilpotent catalog groups (abelian only for the abelian
    family), J over the acting groups, and the action over all of
    Hom(J, Aut(N)).  Instances sharing a fingerprint are kept once.
    """
    cfg = config
    out: list[Instance] = []
    skipped: list[dict] = []
    seen = set()
    for n_name in catalog.NILPOTENT_N:
        N = catalog.group(n_name)
        if cfg.family == "abelian" and not N.is_abelian:
            continue
        for j_name in catalog.ACTING_J:
            J = catalog.group(j_name)
            order = N.order * J.order
            if order > cfg.max_order or order < cfg.min_order:
                continue
            if cfg.coprime is not None and (gcd(N.order, J.order) == 1) != cfg.coprime:
                continue
            aut = _aut(n_name)
            if aut is None:
                skipped.append({"N": n_name, "J": j_name, "reason": "automorphism cap"})
                continue
            try:
                actions = list(enumerate_actions(J, N, aut,
                                                 max_candidates=cfg.max_action_candidates))
            except OrderCapExceeded as exc:
                skipped.append({"N": n_name, "J": j_name, "reason": str(exc)})
                continue
            for action in actions:
                inst = Instance.build(n_name, j_name, action)
                if not _keep(inst, cfg):
                    continue
                if cfg.dedup:
                    fp = inst.fingerprint()
                    if fp in seen:
                        continue
                    seen.add(fp)
                out.append(inst)
    return Corpus(cfg, out, skipped)


def sample(corpus: Corpus, k: int, seed: int) -> list[Instance]:
    """Deterministic sample of ``k`` instances (all of them if fewer)."""
    items = list(corpus.instances)
    if len(items) <= k:
        return items
    rng = random.Random(seed)
    return sorted(rng.sample(items, k), key=items.index)
