"""Cohomological vanishing test and the certificates built on it.

A run is *certified* only when every reduced Betti number over Z_p vanishes
in degrees ``-1..D`` with ``D = (n - 1)(p^k - 1) - 1``.  Budget exhaustion and
non-vanishing both give *inconclusive*; structural faults raise.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .complexes import Graph, InvalidInput, SimplicialComplex, boundary_simplex, independence_complex
from .homology import BettiTable, StructuralError, incidence_matrices, reduced_betti
from .polytopal import (
    Budget,
    BudgetExhausted,
    Skeleton,
    elementary_abelian_action,
    enumerate_skeleton,
    has_invariant_cell,
    is_prime,
    rainbow_complex,
)

log = logging.getLogger(__name__)

CERTIFIED = "certified"
INCONCLUSIVE = "inconclusive"


def vanishing_bound(n: int, p: int, k: int) -> int:
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if n < 1 or k < 1:
        raise InvalidInput("n and k must be positive")
    return (n - 1) * (p**k - 1) - 1


def prime_power(m: int) -> Optional[tuple[int, int]]:
    """``(p, k)`` with ``p**k == m``, or ``None``."""
    if m < 2:
        return None
    p = next(d for d in range(2, m + 1) if m % d == 0)
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


@dataclass
class Certificate:
    kind: str
    params: dict
    bound: int
    betti: Optional[BettiTable]
    verdict: str
    reason: str
    cells: list[int]
    stats: dict = field(default_factory=dict)
    ms: int = 0

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    @property
    def budget_exhausted(self) -> bool:
        return self.reason.startswith("budget")

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        out.update(self.params)
        out.update(
            {
                "bound": self.bound,
                "betti": self.betti.to_json() if self.betti else None,
                "cells": self.cells,
                "verdict": self.verdict,
                "reason": self.reason,
                "stats": self.stats,
                "ms": self.ms,
            }
        )
        return out

    def dumps(self, include_timing: bool = True) -> str:
        data = self.to_json()
        if not include_timing:
            data.pop("ms")
        return json.dumps(data, sort_keys=True, indent=2)


def _validate(n: int, p: int, k: int) -> None:
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if k < 1:
        raise InvalidInput("k must be >= 1")
    if n < 2:
        raise InvalidInput("n must be >= 2 (one color is decided directly, not by this criterion)")


def _certify(
    kind: str,
    params: dict,
    build: Callable[[int], Skeleton],
    n: int,
    p: int,
    k: int,
    workers: int,
) -> Certificate:
    t0 = time.monotonic()
    D = vanishing_bound(n, p, k)
    try:
        skel = build(D + 1)
    except BudgetExhausted as exc:
        return Certificate(
            kind,
            params,
            D,
            None,
            INCONCLUSIVE,
            f"budget: {exc}",
            list(exc.stats.get("dims", [])),
            {"partial": exc.stats.get("dims", [])},
            int((time.monotonic() - t0) * 1000),
        )

    # the translation action is free on these complexes; a fixed cell means an enumeration bug
    if not skel.empty and has_invariant_cell(skel, elementary_abelian_action(p, k)):
        raise StructuralError("found a cell fixed by the whole group; refusing to certify")

    cx = incidence_matrices(skel)
    stats: dict = {"complete": skel.complete}
    table = reduced_betti(cx, p, D, workers=workers, stats=stats)
    for entry in stats["elimination"].values():
        entry.pop("seconds", None)

    nonzero = [i for i in range(-1, D + 1) if table.values[i]]
    if nonzero:
        i = nonzero[0]
        verdict, reason = INCONCLUSIVE, f"reduced Betti number in degree {i} is {table.values[i]}"
    else:
        verdict, reason = CERTIFIED, f"reduced cohomology over Z_{p} vanishes in degrees -1..{D}"
    return Certificate(kind, params, D, table, verdict, reason, skel.dims, stats, int((time.monotonic() - t0) * 1000))


def certify_no_face_coloring(
    sigma: SimplicialComplex,
    n: int,
    p: int,
    k: int,
    budget: Optional[Budget] = None,
    workers: int = 1,
    kind: str = "partition",
    params: Optional[dict] = None,
) -> Certificate:
    """Certified means no map ``vertices -> {1..n}`` has every color class a face of ``sigma``."""
    if sigma.n_vertices == 0:
        raise InvalidInput("complex must have at least one vertex")
    _validate(n, p, k)
    m = p**k
    source = boundary_simplex(m)
    if params is None:
        params = {"complex": sigma.to_json()}
    params = {**params, "n": n, "p": p, "k": k}
    return _certify(kind, params, lambda depth: enumerate_skeleton(source, sigma, depth, budget), n, p, k, workers)


def certify_chromatic(g: Graph, n: int, p: int, k: int, budget: Optional[Budget] = None, workers: int = 1) -> Certificate:
    """Certified means the chromatic number of ``g`` exceeds ``n``."""
    if g.n < 1:
        raise InvalidInput("graph must have a vertex")
    return certify_no_face_coloring(
        independence_complex(g), n, p, k, budget, workers, kind="chromatic", params={"graph": g.to_json()}
    )


def certify_ramsey(
    g: Graph,
    n: int,
    N: int,
    p: int,
    k: int,
    budget: Optional[Budget] = None,
    workers: int = 1,
    method: str = "direct",
) -> Certificate:
    """Certified means every ``n``-edge-coloring of K_N has a one-colored copy of ``g``."""
    if not g.edges:
        raise InvalidInput("pattern graph must have edges")
    if N < 2:
        raise InvalidInput("N must be >= 2")
    _validate(n, p, k)
    m = p**k
    params = {"graph": g.to_json(), "n": n, "N": N, "p": p, "k": k, "m": m}
    return _certify(
        "ramsey", params, lambda depth: rainbow_complex(g, N, m, depth, budget, method=method), n, p, k, workers
    )


def sweep_ramsey(
    g: Graph,
    n: int,
    Ns: list[int],
    ms: list[int],
    budget_factory: Callable[[], Budget] = Budget,
    workers: int = 1,
) -> dict:
    """Certify over a grid of ``N`` and prime-power ``m``; records (never asserts) monotonicity in N."""
    results = []
    for m in ms:
        pk = prime_power(m)
        if pk is None:
            raise InvalidInput(f"m = {m} is not a prime power")
        for N in sorted(Ns):
            cert = certify_ramsey(g, n, N, pk[0], pk[1], budget_factory(), workers)
            results.append(cert)
    violations = []
    for m in ms:
        seen_certified = None
        for cert in (c for c in results if c.params["m"] == m):
            if cert.certified:
                seen_certified = cert.params["N"]
            elif seen_certified is not None and not cert.budget_exhausted:
                violations.append({"m": m, "certified_N": seen_certified, "failed_N": cert.params["N"]})
                log.warning("criterion not monotone in N for m=%d: N=%d certified, N=%d not", m, seen_certified, cert.params["N"])
    return {"certificates": [c.to_json() for c in results], "monotonicity_violations": violations}
