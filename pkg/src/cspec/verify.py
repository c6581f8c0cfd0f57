"""The ``verify`` driver: every executable statement over a catalogue of algebras."""

from __future__ import annotations

import random
from collections import Counter

from .commutator import commutator_table, hypothesis_flags
from .extensions import Status, make_extension, subuniverses, theorem_suite
from .fixtures import FIXTURES, catalogue, fixture, random_algebras
from .properties import algebra_verdicts, check_quotient_cg


def verification_algebras(seed: int, max_size: int, random_count: int):
    seen = set()
    algs = []
    for alg in [fixture(k) for k in sorted(FIXTURES)] + catalogue(max_size):
        if alg.name not in seen:
            seen.add(alg.name)
            algs.append(alg)
    randoms = random_algebras(seed, random_count, max_size=max(2, min(max_size, 4)))
    return algs, randoms


def run_verify(seed: int = 42, max_size: int = 5, random_count: int = 100, quotient_trials: int = 200) -> dict:
    """Deterministic report; no timings, every collection ordered."""
    named, randoms = verification_algebras(seed, max_size, random_count)
    rng = random.Random(seed)
    totals: Counter = Counter()
    violations = []
    algebras = []
    small = [a for a in named + randoms if a.size <= 5]
    per_alg_trials = {a.name: 0 for a in small}
    for k in range(quotient_trials):
        per_alg_trials[small[k % len(small)].name] += 1

    for alg in named + randoms:
        verdicts = algebra_verdicts(alg, seed=seed)
        if per_alg_trials.get(alg.name):
            verdicts.append(check_quotient_cg(alg, rng, per_alg_trials[alg.name]))
        for v in verdicts:
            totals[v.status.value] += 1
            if v.status is Status.VIOLATION:
                violations.append({"scope": "algebra", "algebra": alg.name, "statement": v.statement, "detail": v.detail})
        algebras.append({
            "name": alg.name,
            "size": alg.size,
            "congruences": len(commutator_table(alg).lattice),
            "flags": hypothesis_flags(alg).as_dict(),
            "verdicts": {v.statement: v.status.value for v in verdicts},
        })

    ext_totals: Counter = Counter()
    n_ext = 0
    for big in named + randoms:
        if big.size > max_size:
            continue
        for sub in subuniverses(big):
            n_ext += 1
            for v in theorem_suite(make_extension(big, sub)):
                ext_totals[v.status.value] += 1
                totals[v.status.value] += 1
                if v.status is Status.VIOLATION:
                    violations.append({
                        "scope": "extension",
                        "algebra": big.name,
                        "sub": list(sub),
                        "statement": v.statement,
                        "detail": v.detail,
                    })
    return {
        "command": "verify",
        "seed": seed,
        "max_size": max_size,
        "random_algebras": random_count,
        "quotient_trials": quotient_trials,
        "algebras": algebras,
        "extensions": {"count": n_ext, "verdicts": dict(sorted(ext_totals.items()))},
        "summary": dict(sorted(totals.items())),
        "violations": violations,
    }
